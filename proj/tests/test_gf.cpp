#include "doctest.h"

#include <set>

#include "aslab/gf.hpp"

using namespace aslab::gf;

TEST_CASE("prime field arithmetic") {
    FieldLattice lat(3, {1});
    const FieldDesc& F3 = lat.field(1);
    auto two = FFElem::from_int(F3, 2);
    CHECK(two + two == FFElem::from_int(F3, 1));
    CHECK((two * two) == FFElem::from_int(F3, 1));
}

TEST_CASE("F4 modulus reduction") {
    FieldLattice lat(2, {2});
    const FieldDesc& F4 = lat.field(2);
    // index-least irreducible over F_2 of degree 2 is x^2+x+1
    CHECK(F4.modulus() == std::vector<uint8_t>{1, 1, 1});
    auto w = FFElem::from_index(F4, 2);  // the class of x
    CHECK(w * w == w + FFElem::one(F4));
}

TEST_CASE("F9 structure") {
    FieldLattice lat(3, {2});
    const FieldDesc& F9 = lat.field(2);
    // index-least irreducible of degree 2 over F_3 is x^2+1
    CHECK(F9.modulus() == std::vector<uint8_t>{1, 0, 1});
    auto u = FFElem::from_index(F9, 3);  // class of x, u^2 = -1
    CHECK(u * u == FFElem::from_int(F9, -1));
    CHECK(frobenius(u, 1) == -u);

    auto g = generator(F9);
    CHECK(g.pow(4L) * g.pow(4L) == FFElem::one(F9));
    CHECK(mult_order(g) == 8);

    // relative trace and norm to F_3
    FieldLattice lat2(3, {1, 2});
    const FieldDesc& F9b = lat2.field(2);
    const FieldDesc& F3 = lat2.field(1);
    auto ub = FFElem::from_index(F9b, 3);
    CHECK(rel_trace(ub, F3) == FFElem::zero(F3));
    CHECK(rel_norm(ub, F3) == FFElem::one(F3));
    CHECK(rel_trace(FFElem::one(F9b), F3) == FFElem::from_int(F3, 2));
}

TEST_CASE("frobenius fixes the ground field and has full period") {
    FieldLattice lat(3, {4});
    const FieldDesc& F = lat.field(4);
    auto x = FFElem::from_index(F, 17);
    CHECK(frobenius(x, 0) == x);
    CHECK(frobenius(x, 4) == x);
    // frobenius is a field automorphism
    auto y = FFElem::from_index(F, 23);
    CHECK(frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1));
    CHECK(frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1));
}

TEST_CASE("mu_roots") {
    FieldLattice lat2(2, {2});
    auto mu3 = mu_roots(lat2.field(2), 3);
    CHECK(mu3.size() == 3);
    FieldLattice lat3(3, {1});
    auto mu4 = mu_roots(lat3.field(1), 4);
    CHECK(mu4.size() == 2);
    auto mu1 = mu_roots(lat3.field(1), 1);
    CHECK(mu1.size() == 1);
    CHECK(mu1[0] == FFElem::one(lat3.field(1)));
    // |mu_m| = gcd(m, q-1) on a small grid
    FieldLattice lat(5, {2});
    for (long m = 1; m <= 30; ++m) {
        auto roots = mu_roots(lat.field(2), m);
        long g = 24;
        for (long t = m; t;) { long r = g % t; g = t; t = r; }
        CHECK(static_cast<long>(roots.size()) == g);
        for (const auto& r : roots) CHECK(r.pow(m) == FFElem::one(lat.field(2)));
    }
}

TEST_CASE("additive_solve") {
    // x^p - x = 0 over F_{p^d} -> the prime field
    FieldLattice lat(3, {3});
    const FieldDesc& F27 = lat.field(3);
    std::vector<FFElem> L = {FFElem::from_int(F27, -1), FFElem::one(F27)};  // -x + x^3
    auto sols = additive_solve(L, FFElem::zero(F27));
    CHECK(sols.size() == 3);
    for (const auto& s : sols) CHECK(s * s * s - s == FFElem::zero(F27));

    // b^{p^{2e}} + b = 0 with p=2, e=1 over F_16: y^4 + y
    FieldLattice lat2(2, {4});
    const FieldDesc& F16 = lat2.field(4);
    std::vector<FFElem> L2 = {FFElem::one(F16), FFElem::zero(F16), FFElem::one(F16)};
    auto sols2 = additive_solve(L2, FFElem::zero(F16));
    CHECK(sols2.size() == 4);

    // Artin-Schreier obstruction: x^2 - x = a has no root in F_4 when
    // Tr_{F4/F2}(a) = 1
    FieldLattice lat4(2, {1, 2});
    const FieldDesc& F4 = lat4.field(2);
    const FieldDesc& F2 = lat4.field(1);
    FFElem a = FFElem::from_index(F4, 2);
    REQUIRE(rel_trace(a, F2) == FFElem::one(F2));
    std::vector<FFElem> L3 = {FFElem::from_int(F4, -1), FFElem::one(F4)};
    auto sols3 = additive_solve(L3, a);
    CHECK(sols3.empty());

    // solutions pairwise differ by kernel elements and substitute back
    auto sols4 = additive_solve(L3, FFElem::zero(F4));
    CHECK(sols4.size() == 2);
}

TEST_CASE("lattice embeddings commute") {
    FieldLattice lat(2, {1, 2, 4, 12});
    const FieldDesc& F2 = lat.field(1);
    const FieldDesc& F4 = lat.field(2);
    const FieldDesc& F16 = lat.field(4);
    const FieldDesc& Ftop = lat.field(12);
    for (unsigned long i = 0; i < 4; ++i) {
        FFElem x = FFElem::from_index(F4, i);
        FFElem direct = lat.convert(x, Ftop);
        FFElem via16 = lat.convert(lat.convert(x, F16), Ftop);
        CHECK(direct == via16);
        // round trip
        CHECK(lat.convert(direct, F4) == x);
    }
    // embeddings are ring homs
    FFElem a = FFElem::from_index(F4, 2), b = FFElem::from_index(F4, 3);
    CHECK(lat.convert(a * b, Ftop) == lat.convert(a, Ftop) * lat.convert(b, Ftop));
    CHECK(lat.convert(a + b, Ftop) == lat.convert(a, Ftop) + lat.convert(b, Ftop));
    CHECK(lat.convert(FFElem::one(F2), Ftop) == FFElem::one(Ftop));
}

TEST_CASE("trace transitivity along a tower") {
    FieldLattice lat(3, {1, 2, 4});
    const FieldDesc& F3 = lat.field(1);
    const FieldDesc& F9 = lat.field(2);
    const FieldDesc& F81 = lat.field(4);
    for (unsigned long i = 0; i < 81; i += 7) {
        FFElem x = FFElem::from_index(F81, i);
        CHECK(rel_trace(x, F3) == rel_trace(rel_trace(x, F9), F3));
        if (!x.is_zero()) CHECK(rel_norm(x, F3) == rel_norm(rel_norm(x, F9), F3));
    }
}
