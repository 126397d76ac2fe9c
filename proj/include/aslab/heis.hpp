#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aslab/gf.hpp"

namespace aslab::heis {

using gf::FFElem;
using gf::FieldDesc;
using gf::FieldLattice;

struct QElt {
    FFElem a, b, c;
    bool operator==(const QElt& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Element (g(a,b,c), m) of Q semidirect Z.  The Z-part is exact; the group is
// genuinely infinite and is never quotiented.
struct GrpElt {
    QElt q;
    long long m = 0;
    bool operator==(const GrpElt& o) const { return m == o.m && q == o.q; }
    std::string str() const;
};

enum class SubgroupTag { F, Q0, R0, R, Qfull, Qprime };

// Parameters and cached structure for one (p, e, f) instance of the group Q,
// living inside an ambient field F_{p^L}, L = lcm(2ef, 4e, 2ep) * multiplier.
class HeisContext {
public:
    HeisContext(long p, long e, long f, long ambient_multiplier = 1);

    long p() const { return p_; }
    long e() const { return e_; }
    long f() const { return f_; }
    long e0() const { return e0_; }
    long n0() const { return n0_; }
    long q_order_exponent() const { return 2 * e_ + 1; }  // |Q| = p^{2e+1}(p^e+1)

    const FieldLattice& lattice() const { return *lat_; }
    const FieldDesc& ambient() const;

    // subgroup parameters
    const FFElem& r() const { return r_; }                 // r^{2^{n0}} = -1
    std::vector<FFElem> valid_r() const;                   // in F_{p^{2e0}}, converted to ambient
    void set_r(const FFElem& r_ambient);                   // re-run hook for suites
    const FFElem& b0() const;                              // p = 2 only
    const FFElem& c0() const;
    FFElem s_param() const;                                // p = 2: sum b0^{2^i}, i < e
    FFElem t_param() const;                                // p = 2: b0 + b0^{2^e}
    std::vector<FFElem> valid_b0() const;                  // all trace-1 choices
    void set_b0(const FFElem& b0_ambient);
    GrpElt bom_g() const;                                  // p = 2: (g(1,b0,c0), -1)

    // group law
    QElt q_make(const FFElem& a, const FFElem& b, const FFElem& c) const;  // validates
    QElt q_identity() const;
    QElt q_mul(const QElt& x, const QElt& y) const;
    QElt q_inv(const QElt& x) const;
    QElt act(long long m, const QElt& x) const;            // entries^(p^{-m})
    GrpElt mul(const GrpElt& x, const GrpElt& y) const;
    GrpElt inv(const GrpElt& x) const;
    GrpElt power(const GrpElt& x, long long k) const;
    GrpElt fr(long long m) const;
    GrpElt lift(const QElt& q) const { return GrpElt{q, 0}; }
    GrpElt conj(const GrpElt& g, const GrpElt& x) const;   // x g x^{-1}

    // enumeration (finite tags only; R and Qprime raise BudgetExceeded)
    const std::vector<GrpElt>& enumerate(SubgroupTag tag) const;
    bool contains(SubgroupTag tag, const GrpElt& g) const;  // all tags
    std::vector<GrpElt> coset_reps_Q0_mod_R0() const;       // left coset reps
    const std::vector<FFElem>& mu_list() const;             // mu_{p^e+1}(ambient)
    FFElem mu_generator() const;                            // fixed generator of mu

    // exhaustive structural verification; throws CheckFailed with a witness
    struct StructureReport {
        long q_size = 0;
        long center_size = 0;
        long qab_order = 0;
        bool f_is_center_q0 = false;
        bool commutators_surjective = false;
        bool qab_is_mu = false;
        bool hyp_iv_fixed_point_free = false;
        bool hyp_iii_trivial_on_center = false;
        bool z_action_automorphism = false;
        bool conj_stabilizes_r0 = false;
    };
    StructureReport structure_checks() const;

private:
    long p_, e_, f_, e0_, n0_, L_;
    std::unique_ptr<FieldLattice> lat_;
    FFElem r_;
    std::optional<FFElem> b0_, c0_;
    mutable std::map<SubgroupTag, std::vector<GrpElt>> enum_cache_;
    mutable std::vector<FFElem> mu_cache_;

    void compute_b0_c0(const FFElem& b0);
    std::vector<FFElem> c_solutions(const FFElem& b) const;
    std::vector<FFElem> b_kernel() const;
    std::vector<FFElem> r0_b_kernel() const;
};

}  // namespace aslab::heis
