#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "aslab/cyclotomic.hpp"
#include "aslab/heis.hpp"
#include "aslab/trace_oracle.hpp"

namespace aslab::reps {

using cyclo::CycField;
using cyclo::CycNum;
using heis::GrpElt;
using heis::HeisContext;
using heis::QElt;
using heis::SubgroupTag;

// Dense square matrix over a cyclotomic field.
class CycMatrix {
public:
    CycMatrix() : n_(0) {}
    CycMatrix(const CycField& F, long n);  // zero matrix
    static CycMatrix identity(const CycField& F, long n);

    long size() const { return n_; }
    CycNum& at(long i, long j) { return a_[i * n_ + j]; }
    const CycNum& at(long i, long j) const { return a_[i * n_ + j]; }

    CycMatrix operator*(const CycMatrix& o) const;
    CycMatrix operator+(const CycMatrix& o) const;
    CycMatrix scaled(const CycNum& c) const;
    CycMatrix pow(long k) const;  // k may be negative
    CycMatrix inverse() const;
    CycNum trace() const;
    CycNum det() const;
    bool operator==(const CycMatrix& o) const;
    bool is_zero() const;

private:
    long n_;
    const CycField* F_ = nullptr;
    std::vector<CycNum> a_;
};

// Character value map on a (sub)group of Q semidirect Z.
struct ClassFunction {
    std::function<CycNum(const GrpElt&)> eval;
    CycNum operator()(const GrpElt& g) const { return eval(g); }
};

// The character phi_n of the subgroup R, both parity branches.  Construction
// verifies the homomorphism property exhaustively on R_0 and the
// conjugation-invariance that makes the extension to R well defined.
class PhiChar {
public:
    PhiChar(const HeisContext& ctx, const CycField& F, long n);

    long n() const { return n_; }
    // evaluate at an element of R (throws NotASubgroup otherwise)
    CycNum operator()(const GrpElt& g) const;
    // restriction to R_0 (m = 0 part)
    CycNum on_r0(const QElt& q) const;
    // generator values
    CycNum fr_generator_value() const;  // phi_n(Fr(2e0)) for p odd, phi_n(bom-g) for p = 2

private:
    const HeisContext* ctx_;
    const CycField* F_;
    long n_;
    CycNum fr_value_;
    // p = 2 factorization data
    struct R0pp;  // R_0'' bookkeeping
    std::shared_ptr<R0pp> r0pp_;
    void verify();
};

PhiChar build_phi_n(const HeisContext& ctx, const CycField& F, long n);

// Frobenius character formula for Ind from R (or R_0) with the fixed left
// coset representatives of R_0 in Q_0.
ClassFunction induce_character(const HeisContext& ctx, const CycField& F, const PhiChar& phi,
                               SubgroupTag from, SubgroupTag to);
// generic induction of a character given by (membership, eval)
ClassFunction induce_character(const HeisContext& ctx, const CycField& F,
                               std::function<bool(const GrpElt&)> member,
                               std::function<CycNum(const GrpElt&)> chi,
                               const std::vector<GrpElt>& coset_reps);

// Matrix model of tau^0 on Q (induced from R_0 and extended across
// mu_{p^e+1} by the trace-(-1) twist selection), together with the Frobenius
// intertwiner normalized against the geometric trace; the result is a model
// of the full representation on Q semidirect Z.
class HeisenbergModel {
public:
    HeisenbergModel(const HeisContext& ctx, const CycField& F,
                    const traceo::Convention& conv = traceo::Convention{});

    long dim() const { return dim_; }
    const HeisContext& ctx() const { return *ctx_; }
    const CycField& field() const { return *F_; }

    CycMatrix rho(const QElt& q) const;          // tau^0
    CycMatrix full(const GrpElt& g) const;       // rho(q) * Phi^m
    CycNum tau0_char(const QElt& q) const;
    CycNum tau_psi0_char(const GrpElt& g) const;
    CycNum det_tau0(const QElt& q) const;
    CycNum det_full(const GrpElt& g) const;
    const CycMatrix& frobenius_matrix() const { return Phi_; }
    CycNum det_frobenius() const { return detPhi_; }

    // quadratic character of mu_{p^e+1} (trivial for p = 2)
    CycNum chi0(const gf::FFElem& a) const;
    // rectifier twist character value at g
    CycNum twist(const GrpElt& g, long n, long nprime) const;
    // tau_n character (twisted geometric character)
    CycNum tau_n_char(const GrpElt& g, long n, long nprime) const;
    ClassFunction tau_n(long n, long nprime) const;

    // which of the p^e+1 candidate extensions satisfied the trace condition
    long selected_candidate() const { return selected_; }
    // number of candidates that satisfied it (must be 1)
    long candidate_count() const { return candidate_count_; }

    // <chi, chi> over Q for the tau^0 character (exact rational)
    cyclo::Rat tau0_self_inner_product() const;
    // multiplicity of the mu-character with given index in tau^0 |_{mu}
    CycNum mu_multiplicity(long chi_index) const;

private:
    const HeisContext* ctx_;
    const CycField* F_;
    long dim_;
    std::vector<GrpElt> reps_;
    std::unique_ptr<PhiChar> phi_;
    gf::FFElem a0_;
    long mu_order_;
    CycMatrix A_;  // rho-tilde(a0)
    CycMatrix Phi_;
    CycNum detPhi_;
    long selected_ = -1;
    long candidate_count_ = 0;
    mutable std::map<std::pair<unsigned long, unsigned long>, CycMatrix> rho0_cache_;
    mutable std::map<long long, CycMatrix> phi_pow_cache_;

    CycMatrix rho0(const QElt& q) const;  // induced model on Q_0
    long mu_log(const gf::FFElem& a) const;
    const CycMatrix& phi_power(long long m) const;
};

}  // namespace aslab::reps
