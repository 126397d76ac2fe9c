#include "doctest.h"

#include "aslab/heis.hpp"

using namespace aslab::heis;
using aslab::gf::FFElem;
using aslab::gf::frobenius;

TEST_CASE("group orders") {
    HeisContext c21(2, 1, 1);
    CHECK(c21.enumerate(SubgroupTag::Qfull).size() == 24);
    CHECK(c21.enumerate(SubgroupTag::F).size() == 2);

    HeisContext c31(3, 1, 1);
    CHECK(c31.enumerate(SubgroupTag::Q0).size() == 27);
    CHECK(c31.enumerate(SubgroupTag::Qfull).size() == 108);
    CHECK(c31.enumerate(SubgroupTag::F).size() == 3);
    CHECK(c31.enumerate(SubgroupTag::R0).size() == 9);
}

TEST_CASE("identity and inverses") {
    HeisContext ctx(3, 1, 1);
    GrpElt id{ctx.q_identity(), 0};
    const auto& Q = ctx.enumerate(SubgroupTag::Qfull);
    for (size_t i = 0; i < Q.size(); i += 7) {
        CHECK(ctx.mul(Q[i], id) == Q[i]);
        CHECK(ctx.mul(Q[i], ctx.inv(Q[i])) == id);
    }
    // (g(a,0,0),0)^{-1} = (g(a^{-1},0,0),0)
    FFElem a = ctx.mu_generator();
    GrpElt ga{ctx.q_make(a, FFElem::zero(ctx.ambient()), FFElem::zero(ctx.ambient())), 0};
    GrpElt gai = ctx.inv(ga);
    CHECK(gai.q.a == a.inv());
    CHECK(gai.q.b.is_zero());
    CHECK(gai.q.c.is_zero());
}

TEST_CASE("commutator formula on Q0") {
    HeisContext ctx(3, 1, 1);
    const auto& Q0 = ctx.enumerate(SubgroupTag::Q0);
    for (size_t i = 0; i < Q0.size(); i += 3) {
        for (size_t j = 0; j < Q0.size(); j += 5) {
            const auto& x = Q0[i];
            const auto& y = Q0[j];
            GrpElt comm = ctx.mul(ctx.mul(ctx.mul(x, y), ctx.inv(x)), ctx.inv(y));
            FFElem base = frobenius(x.q.b, 1) * y.q.b - x.q.b * frobenius(y.q.b, 1);
            FFElem expect = FFElem::zero(ctx.ambient());
            for (long k = 0; k < 1; ++k) expect = expect + frobenius(base, k);
            CHECK(comm.q.a == FFElem::one(ctx.ambient()));
            CHECK(comm.q.b.is_zero());
            CHECK(comm.q.c == expect);
        }
    }
}

TEST_CASE("bom-g inverse decomposition (p=2)") {
    for (long e : {1L, 2L}) {
        HeisContext ctx(2, e, 1);
        GrpElt bg = ctx.bom_g();
        GrpElt bginv = ctx.inv(bg);
        // bom-g^{-1} = Fr(1) * (g(1, b0, c0 + sum (b0^{2^e+1})^{2^i}), 0)
        FFElem corr = FFElem::zero(ctx.ambient());
        FFElem b0pe1 = frobenius(ctx.b0(), e) * ctx.b0();
        for (long i = 0; i < e; ++i) corr = corr + frobenius(b0pe1, i);
        GrpElt rhs = ctx.mul(ctx.fr(1),
                             GrpElt{ctx.q_make(FFElem::one(ctx.ambient()), ctx.b0(),
                                               ctx.c0() + corr),
                                    0});
        CHECK(bginv == rhs);
    }
}

TEST_CASE("structure checks pass for the acceptance grid") {
    for (auto [p, e] : {std::pair<long, long>{2, 1}, {2, 2}, {3, 1}}) {
        HeisContext ctx(p, e, 1);
        auto rep = ctx.structure_checks();
        CHECK(rep.f_is_center_q0);
        CHECK(rep.commutators_surjective);
        CHECK(rep.qab_is_mu);
        CHECK(rep.hyp_iv_fixed_point_free);
        CHECK(rep.hyp_iii_trivial_on_center);
        CHECK(rep.z_action_automorphism);
        CHECK(rep.conj_stabilizes_r0);
        long pe1 = 1;
        for (long i = 0; i < e; ++i) pe1 *= p;
        CHECK(rep.qab_order == pe1 + 1);
    }
}

TEST_CASE("associativity via multiplication table is exercised by structure_checks") {
    // structure_checks already builds the full table and verifies the group
    // laws; here we sample triple products directly including the Z-part.
    HeisContext ctx(2, 2, 1);
    const auto& Q = ctx.enumerate(SubgroupTag::Qfull);
    for (size_t i = 0; i < Q.size(); i += 13) {
        for (size_t j = 0; j < Q.size(); j += 17) {
            for (size_t k = 0; k < Q.size(); k += 19) {
                GrpElt x = Q[i], y = Q[j], z = Q[k];
                x.m = 1;
                z.m = -2;
                CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
            }
        }
    }
}

TEST_CASE("coset reps of R0 in Q0") {
    HeisContext ctx(3, 1, 1);
    auto reps = ctx.coset_reps_Q0_mod_R0();
    CHECK(reps.size() == 3);  // p^e
    HeisContext c22(2, 2, 1);
    CHECK(c22.coset_reps_Q0_mod_R0().size() == 4);
}

TEST_CASE("R membership") {
    HeisContext ctx(3, 1, 1);
    // Fr(2e0) is in R, Fr(1) is not (p odd)
    CHECK(ctx.contains(SubgroupTag::R, ctx.fr(2 * ctx.e0())));
    CHECK(!ctx.contains(SubgroupTag::R, ctx.fr(1)));
    const auto& R0 = ctx.enumerate(SubgroupTag::R0);
    for (const auto& g : R0) CHECK(ctx.contains(SubgroupTag::R, g));

    HeisContext c2(2, 1, 1);
    CHECK(c2.contains(SubgroupTag::R, c2.bom_g()));
    CHECK(c2.contains(SubgroupTag::R, c2.power(c2.bom_g(), 3)));
    CHECK(c2.contains(SubgroupTag::R, c2.inv(c2.bom_g())));
}

TEST_CASE("enumerating infinite subgroups is rejected") {
    HeisContext ctx(2, 1, 1);
    CHECK_THROWS_AS(ctx.enumerate(SubgroupTag::R), aslab::BudgetExceeded);
    CHECK_THROWS_AS(ctx.enumerate(SubgroupTag::Qprime), aslab::BudgetExceeded);
}
