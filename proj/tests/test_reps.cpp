#include "doctest.h"

#include <set>
#include <string>

#include "aslab/reps.hpp"

using namespace aslab;
using namespace aslab::reps;
using cyclo::CycField;
using cyclo::CycNum;
using cyclo::Rat;
using gf::FFElem;
using heis::GrpElt;
using heis::HeisContext;
using heis::SubgroupTag;

static traceo::Convention conv() {
    static traceo::Convention c = traceo::calibrate_convention();
    return c;
}

TEST_CASE("phi_n values, p odd") {
    HeisContext ctx(3, 1, 1);
    CycField F(24);
    PhiChar phi = build_phi_n(ctx, F, 3);
    // extends psi_0 on F: phi((1,0,1),0) = zeta_3
    GrpElt z{ctx.q_make(FFElem::one(ctx.ambient()), FFElem::zero(ctx.ambient()),
                        FFElem::one(ctx.ambient())),
             0};
    CHECK(phi(z) == cyclo::root_of_unity(F, 8));
    // phi(Fr(2)) = (-1)^{n e0 (p-1)/2} = -1 for n = 3
    CHECK(phi(ctx.fr(2)) == CycNum::from_int(F, -1));
    // n = 6: (-1)^{6 * 1 * 1} = +1
    PhiChar phi6 = build_phi_n(ctx, F, 6);
    CHECK(phi6(ctx.fr(2)) == CycNum::one(F));
    CHECK_THROWS_AS(phi(ctx.fr(1)), NotASubgroup);
}

TEST_CASE("phi_n values, p = 2") {
    CycField F(8);
    for (long e : {1L, 2L}) {
        HeisContext ctx(2, e, 1);
        long n = (e == 1) ? 2 : 4;
        PhiChar phi = build_phi_n(ctx, F, n);
        // phi(bom-g) = (-1)^{n(n-2)/8} (-sqrt2 + sqrt(-2))/2
        CycNum base = (-cyclo::sqrt2(F) + cyclo::sqrtm2(F)).scaled(Rat(1, 2));
        long sgn = ((n * (n - 2) / 8) % 2 == 0) ? 1 : -1;
        CHECK(phi(ctx.bom_g()) == base.scaled(Rat(sgn)));
        // extends psi_0 on F
        GrpElt z{ctx.q_make(FFElem::one(ctx.ambient()), FFElem::zero(ctx.ambient()),
                            FFElem::one(ctx.ambient())),
                 0};
        CHECK(phi(z) == CycNum::from_int(F, -1));
    }
}

TEST_CASE("induction basics") {
    HeisContext ctx(2, 1, 1);
    CycField F(24);
    // trivial character of F induced to Q_0 has dimension [Q_0 : F] = 4
    const auto& Q0 = ctx.enumerate(SubgroupTag::Q0);
    const auto& Fg = ctx.enumerate(SubgroupTag::F);
    std::vector<GrpElt> reps;
    {
        std::set<std::string> seen;
        for (const auto& g : Q0) {
            bool hit = false;
            for (const auto& z : Fg)
                if (seen.count(ctx.mul(g, z).str())) hit = true;
            if (!hit) {
                reps.push_back(g);
                for (const auto& z : Fg) seen.insert(ctx.mul(g, z).str());
            }
        }
    }
    CHECK(reps.size() == 4);
    auto ind = induce_character(
        ctx, F, [&](const GrpElt& g) { return ctx.contains(SubgroupTag::F, g); },
        [&](const GrpElt&) { return CycNum::one(F); }, reps);
    CHECK(ind(GrpElt{ctx.q_identity(), 0}) == CycNum::from_int(F, 4));

    // Ind_{R_0}^{Q_0} phi at identity = p^e and at central g(1,0,1) = p^e zeta_p
    PhiChar phi = build_phi_n(ctx, F, 2);
    auto ind2 = induce_character(ctx, F, phi, SubgroupTag::R0, SubgroupTag::Q0);
    CHECK(ind2(GrpElt{ctx.q_identity(), 0}) == CycNum::from_int(F, 2));
    GrpElt z{ctx.q_make(FFElem::one(ctx.ambient()), FFElem::zero(ctx.ambient()),
                        FFElem::one(ctx.ambient())),
             0};
    CHECK(ind2(z) == CycNum::from_int(F, -2));

    HeisContext c3(3, 1, 1);
    PhiChar phi3 = build_phi_n(c3, F, 3);
    auto ind3 = induce_character(c3, F, phi3, SubgroupTag::R0, SubgroupTag::Q0);
    CHECK(ind3(GrpElt{c3.q_identity(), 0}) == CycNum::from_int(F, 3));
    GrpElt z3{c3.q_make(FFElem::one(c3.ambient()), FFElem::zero(c3.ambient()),
                        FFElem::one(c3.ambient())),
              0};
    CHECK(ind3(z3) == cyclo::root_of_unity(F, 8).scaled(Rat(3)));
}

TEST_CASE("tau0 model: dimensions, trace conditions, uniqueness") {
    for (auto [p, e] : {std::pair<long, long>{2, 1}, {3, 1}, {2, 2}}) {
        long N = (p == 2 && e == 2) ? 40 : 24;
        CycField F(N);
        HeisContext ctx(p, e, 1);
        HeisenbergModel model(ctx, F, conv());
        long pe = 1;
        for (long i = 0; i < e; ++i) pe *= p;
        CHECK(model.dim() == pe);
        CHECK(model.candidate_count() == 1);
        // character values on mu-elements are -1
        FFElem a = ctx.mu_generator();
        FFElem cur = a;
        for (long k = 1; k <= pe; ++k) {
            heis::QElt q{cur, FFElem::zero(ctx.ambient()), FFElem::zero(ctx.ambient())};
            CHECK(model.tau0_char(q) == CycNum::from_int(F, -1));
            cur = cur * a;
        }
        // restriction to F is psi_0^{p^e}
        heis::QElt zc{FFElem::one(ctx.ambient()), FFElem::zero(ctx.ambient()),
                      FFElem::one(ctx.ambient())};
        CHECK(model.tau0_char(zc) == cyclo::root_of_unity(F, N / p).scaled(Rat(pe)));
        // irreducibility
        CHECK(model.tau0_self_inner_product() == Rat(1));
        // multiplicativity of the matrix model on Q (sampled)
        const auto& Q = ctx.enumerate(SubgroupTag::Qfull);
        for (size_t i = 0; i < Q.size(); i += 17)
            for (size_t j = 0; j < Q.size(); j += 23) {
                auto prod = ctx.mul(Q[i], Q[j]);
                CHECK(model.rho(prod.q) == model.rho(Q[i].q) * model.rho(Q[j].q));
            }
    }
}

TEST_CASE("tau0 decomposition over mu (taudec)") {
    CycField F(24);
    HeisContext ctx(3, 1, 1);
    HeisenbergModel model(ctx, F, conv());
    CHECK(model.mu_multiplicity(0).is_zero());
    for (long j = 1; j <= 3; ++j) CHECK(model.mu_multiplicity(j) == CycNum::one(F));
}

TEST_CASE("det tau0 = chi_0") {
    CycField F(24);
    {
        HeisContext ctx(3, 1, 1);
        HeisenbergModel model(ctx, F, conv());
        // trivial on Q_0
        for (const auto& g : ctx.enumerate(SubgroupTag::Q0))
            CHECK(model.det_tau0(g.q) == CycNum::one(F));
        // at a of order 4: chi_0(a) = -1
        FFElem a = ctx.mu_generator();
        heis::QElt q{a, FFElem::zero(ctx.ambient()), FFElem::zero(ctx.ambient())};
        CHECK(model.det_tau0(q) == CycNum::from_int(F, -1));
        CHECK(model.det_tau0(q) == model.chi0(a));
        // full check over Q
        for (const auto& g : ctx.enumerate(SubgroupTag::Qfull))
            CHECK(model.det_tau0(g.q) == model.chi0(g.q.a));
    }
    {
        HeisContext ctx(2, 1, 1);
        HeisenbergModel model(ctx, F, conv());
        for (const auto& g : ctx.enumerate(SubgroupTag::Qfull))
            CHECK(model.det_tau0(g.q) == CycNum::one(F));
    }
}

TEST_CASE("det of the Frobenius matrix matches the Newton-identity route") {
    CycField F24(24);
    {
        HeisContext ctx(3, 1, 1);
        HeisenbergModel model(ctx, F24, conv());
        auto newton = traceo::frobenius_det(3, 1, 1, F24, conv());
        CHECK(model.det_frobenius() == newton.det_fr1);
        CHECK(model.det_frobenius() == traceo::frobenius_det_closed_form(3, 1, 1, F24));
    }
    {
        HeisContext ctx(2, 1, 1);
        HeisenbergModel model(ctx, F24, conv());
        CHECK(model.det_frobenius() == CycNum::from_int(F24, 2));
    }
}

TEST_CASE("geometric character equals the model character (restQ)") {
    // all q at m in {1,2}; ambient multiplier chosen so the fixed loci split
    struct Case {
        long p, e, mult;
    };
    for (auto c : {Case{2, 1, 6}, Case{3, 1, 2}, Case{2, 2, 3}}) {
        CycField F((c.p == 2 && c.e == 2) ? 40 : 24);
        HeisContext ctx(c.p, c.e, 1, c.mult);
        HeisenbergModel model(ctx, F, conv());
        const auto& Q = ctx.enumerate(SubgroupTag::Qfull);
        for (const auto& g : Q) {
            for (long m : {1L, 2L}) {
                GrpElt gm{g.q, m};
                CHECK(traceo::geometric_trace(ctx, F, gm, conv()) == model.tau_psi0_char(gm));
            }
        }
    }
}

TEST_CASE("rectifier twist values") {
    CycField F24(24);
    {
        HeisContext ctx(2, 1, 1);
        HeisenbergModel model(ctx, F24, conv());
        // p=2, n=2: twist at Fr(1) = 2^{-1/2}
        CHECK(model.twist(ctx.fr(1), 2, 1) == cyclo::pow_p_half(F24, 2, -1));
    }
    {
        HeisContext ctx(3, 1, 1);
        HeisenbergModel model(ctx, F24, conv());
        // p=3, n=3, n'=1: twist at Fr(1) = i * 3^{-1/2}
        auto expect = cyclo::sqrt_minus1(F24) * cyclo::pow_p_half(F24, 3, -1);
        CHECK(model.twist(ctx.fr(1), 3, 1) == expect);
        // trivial on Q_0 at m = 0
        for (const auto& g : ctx.enumerate(SubgroupTag::Q0))
            CHECK(model.twist(g, 3, 1) == CycNum::one(F24));
    }
}

TEST_CASE("tau_n restricted to Q' is induced from phi_n (taunind)") {
    struct Case {
        long p, e, n, mult;
    };
    for (auto c : {Case{2, 1, 2, 6}, Case{3, 1, 3, 2}, Case{2, 2, 4, 3}}) {
        CycField F((c.p == 2 && c.e == 2) ? 40 : 24);
        HeisContext ctx(c.p, c.e, 1, c.mult);
        HeisenbergModel model(ctx, F, conv());
        PhiChar phi = build_phi_n(ctx, F, c.n);
        auto ind = induce_character(ctx, F, phi, SubgroupTag::R, SubgroupTag::Qprime);
        long nprime = 1;
        // m-window: multiples of 2e0 for p odd, all m for p = 2
        std::vector<long> ms;
        if (c.p == 2)
            ms = {-2, -1, 0, 1, 2};
        else
            ms = {-2 * ctx.e0(), 0, 2 * ctx.e0()};
        const auto& Q0 = ctx.enumerate(SubgroupTag::Q0);
        for (const auto& g : Q0) {
            for (long m : ms) {
                GrpElt gm{g.q, m};
                CHECK(ind(gm) == model.tau_n_char(gm, c.n, nprime));
            }
        }
    }
}
