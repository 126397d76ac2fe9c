#include "doctest.h"

#include <cmath>

#include "aslab/trace_oracle.hpp"

using namespace aslab;
using namespace aslab::traceo;
using cyclo::CycField;
using cyclo::CycNum;
using cyclo::Rat;

static Convention conv() {
    static Convention c = calibrate_convention();
    return c;
}

TEST_CASE("calibration finds a convention") {
    std::vector<Convention> passing;
    Convention c = calibrate_convention(&passing);
    CHECK(passing.size() >= 1);
    CHECK(c.overall == -1);
    CHECK(c.psi_arg == +1);
}

TEST_CASE("pinned Frobenius traces") {
    CycField F24(24);
    // p=3: -(1+2 zeta_3) = -canonical sqrt
    auto g3 = cyclo::canonical_sqrt(F24, 3);
    CHECK(frobenius_power_trace(3, 1, 1, F24, conv()) == -g3);
    // p=2: 0, for every e
    CycField F8(8);
    for (long e : {1L, 2L, 3L}) CHECK(frobenius_power_trace(2, e, 1, F8, conv()).is_zero());
    // p=5: -sqrt(5)
    CycField F40(40);
    CHECK(frobenius_power_trace(5, 1, 1, F40, conv()) == -cyclo::canonical_sqrt(F40, 5));
    // Fr(2e0) traces: p^{e0}
    CHECK(frobenius_power_trace(3, 1, 2, F24, conv()) == CycNum::from_int(F24, 3));
    CHECK(frobenius_power_trace(3, 2, 4, F24, conv()) == CycNum::from_int(F24, 9));
    CHECK(frobenius_power_trace(5, 1, 2, F40, conv()) == CycNum::from_int(F40, 5));
    CHECK(frobenius_power_trace(5, 2, 4, F40, conv()) == CycNum::from_int(F40, 25));
}

TEST_CASE("bom-g inverse trace is -2 for p=2") {
    CycField F8(8);
    for (long e : {1L, 2L, 3L}) {
        heis::HeisContext ctx(2, e, 1);
        auto gi = ctx.inv(ctx.bom_g());
        CHECK(geometric_trace(ctx, F8, gi, conv()) == CycNum::from_int(F8, -2));
    }
}

TEST_CASE("geometric trace rejects m < 1") {
    heis::HeisContext ctx(2, 1, 1);
    CycField F8(8);
    CHECK_THROWS_AS(geometric_trace(ctx, F8, ctx.fr(0), conv()), InvalidParams);
}

TEST_CASE("Kummer decomposition is consistent with the full trace") {
    // sum over nontrivial chi of the twisted counts equals Tr Fr(f*j);
    // defined when p^e+1 | q^j - 1 (Frobenius preserves the eigenlines)
    CycField F24(24);
    {
        long p = 3, e = 1, f = 1;
        for (long j : {2L, 4L}) {
            CycNum total = CycNum::zero(F24);
            for (long chi = 1; chi <= 3; ++chi)
                total = total + kummer_twisted_count(p, e, f, chi, j, F24, conv());
            CHECK(total == frobenius_power_trace(p, e, f * j, F24, conv()));
        }
    }
    // p = 2, e = 2: mu_5 characters, conductor 40
    CycField F40(40);
    {
        CycNum total = CycNum::zero(F40);
        for (long chi = 1; chi <= 4; ++chi)
            total = total + kummer_twisted_count(2, 2, 1, chi, 4, F40, conv());
        CHECK(total == frobenius_power_trace(2, 2, 4, F40, conv()));
    }
}

TEST_CASE("Kummer twisted counts satisfy Weil purity") {
    // f = 2 makes p^e+1 | q - 1, so j = 1 is allowed
    CycField F24(24);
    for (long chi = 1; chi <= 3; ++chi) {
        auto v = kummer_twisted_count(3, 1, 2, chi, 1, F24, conv());
        CHECK(std::abs(std::abs(v.embed()) - 3.0) < 1e-9);  // sqrt(q), q = 9
    }
    CHECK_THROWS_AS(kummer_twisted_count(3, 1, 2, 0, 1, F24, conv()), InvalidParams);
    CHECK_THROWS_AS(kummer_twisted_count(3, 1, 2, 4, 1, F24, conv()), InvalidParams);
    CHECK_THROWS_AS(kummer_twisted_count(3, 1, 1, 1, 1, F24, conv()), InvalidParams);
}

TEST_CASE("frobenius_det matches the closed form") {
    CycField F24(24);
    CycField F8(8);
    // (p,e,f) = (2,1,1): 2
    CHECK(frobenius_det(2, 1, 1, F8, conv()).det == CycNum::from_int(F8, 2));
    CHECK(frobenius_det_closed_form(2, 1, 1, F8) == CycNum::from_int(F8, 2));
    // (2,2,1): 4
    CHECK(frobenius_det(2, 2, 1, F8, conv()).det == CycNum::from_int(F8, 4));
    // (3,1,1): i*3^{3/2}
    auto d31 = frobenius_det(3, 1, 1, F24, conv());
    auto expect31 = cyclo::sqrt_minus1(F24) * cyclo::pow_p_half(F24, 3, 3);
    CHECK(d31.det == expect31);
    CHECK(frobenius_det_closed_form(3, 1, 1, F24) == expect31);
    // (3,1,2): -27
    CHECK(frobenius_det(3, 1, 2, F24, conv()).det == CycNum::from_int(F24, -27));
    CHECK(frobenius_det_closed_form(3, 1, 2, F24) == CycNum::from_int(F24, -27));
}

TEST_CASE("H^1 eigenvalues have absolute value sqrt(q)") {
    CycField F24(24);
    for (auto [p, e, f] : {std::tuple<long, long, long>{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 1, 2}}) {
        auto d = frobenius_det(p, e, f, F24.conductor() % p == 0 ? F24 : F24, conv());
        auto roots = char_poly_roots(d.char_poly);
        double sq = std::sqrt(static_cast<double>(p));
        for (auto z : roots) CHECK(std::abs(std::abs(z) - sq) < 1e-9);
    }
}

TEST_CASE("gauss sums") {
    CycField F24(24);
    gf::FieldLattice lat3(3, {1, 2, 3});
    // quadratic character over F_3: 1 + 2 zeta_3 (= i sqrt 3)
    auto g3 = gauss_sum(lat3.field(1), 1, F24);
    CHECK(g3 == cyclo::canonical_sqrt(F24, 3));
    // Hasse-Davenport: g(F_9) = -(-g(F_3))^2 = 3
    auto g9 = gauss_sum(lat3.field(2), 4, F24);
    CHECK(g9 == CycNum::from_int(F24, 3));
    // j = 3: g(F_27) = -(-g(F_3))^3
    auto g27 = gauss_sum(lat3.field(3), 13, F24);
    CHECK(g27 == -((-g3).pow(3)));
}

TEST_CASE("jacobi and residue symbols") {
    CHECK(jacobi(2, 15) == 1);
    CHECK(jacobi(2, 3) == -1);
    CHECK(jacobi(-2, 3) == 1);
    CHECK(jacobi(-1, 3) == -1);
    CHECK(jacobi(1, 1) == 1);
    CHECK(jacobi(6, 3) == 0);
    gf::FieldLattice lat(3, {2});
    auto g = gf::generator(lat.field(2));
    CHECK(gf::mult_order(g) == 8);
    CHECK(residue_symbol(g) == -1);
    CHECK(residue_symbol(g * g) == 1);
    CHECK(residue_symbol(gf::FFElem::zero(lat.field(2))) == 0);
}

TEST_CASE("quadratic form counts and (gsumy)") {
    // (-1)^{n-2} sum psi_0(nu(y)) = (-1/p) {-(-2n'/p)}^n sqrt((-1)^{(p-1)/2} p}^{n-2}
    for (long p : {3L, 5L, 7L}) {
        CycField F(8 * p);
        gf::FieldLattice lat(p, {1});
        for (long n = 3; n <= 6; ++n) {
            long pe = p;  // e = 1 requires p^1 || n
            if (n % pe != 0) continue;
            long nprime = n / pe;
            if (nprime % p == 0) continue;
            QuadForm qf{p, n, nprime};
            auto lhs = quad_count(qf, lat.field(1), F);
            if ((n - 2) % 2 == 1) lhs = -lhs;
            auto rhs = cyclo::canonical_sqrt(F, p).pow(n - 2);
            long sign = jacobi(-1, p);
            long inner = jacobi(-2 * nprime, p);
            long unit = 1;
            for (long i = 0; i < n; ++i) unit *= -inner;
            rhs = rhs.scaled(Rat(sign * unit));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("quad_det square class (detnu)") {
    // det nu_{n-2} = -(-2n')^n in F_p^x / squares
    for (long p : {3L, 5L, 7L}) {
        for (long n = 3; n <= 6; ++n) {
            if (n % p != 0) continue;
            long nprime = n / p;
            if (nprime % p == 0) continue;
            QuadForm qf{p, n, nprime};
            long expect = jacobi(-1, p);
            for (long i = 0; i < n; ++i) expect *= jacobi(-2 * nprime, p);
            CHECK(quad_det_class(qf) == expect);
        }
    }
    // spec example p=3, n=3, n'=1: class of -(-2)^3 = 8 ~ 2 mod squares
    QuadForm qf{3, 3, 1};
    CHECK(quad_det_class(qf) == jacobi(2, 3));
}

TEST_CASE("empty quadratic factor") {
    QuadForm qf{2, 2, 1};
    gf::FieldLattice lat(2, {1});
    CycField F8(8);
    CHECK(quad_count(qf, lat.field(1), F8) == CycNum::one(F8));
}
