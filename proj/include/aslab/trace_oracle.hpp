#pragma once

#include <vector>

#include "aslab/cyclotomic.hpp"
#include "aslab/gf.hpp"
#include "aslab/heis.hpp"

namespace aslab::traceo {

using cyclo::CycField;
using cyclo::CycNum;

// The arithmetic-vs-geometric Frobenius normalization leaves a sign and an
// orientation free in the fixed-point formula.  Both are fixed once, at build
// time, by requiring the three pinned trace identities to hold exactly.
struct Convention {
    int overall = -1;  // global sign of the fixed-point sum
    int psi_arg = +1;  // sign inside psi_0
};

// Returns the calibrated convention together with the list of conventions
// that pass (for the report); throws CheckFailed if none does.
Convention calibrate_convention(std::vector<Convention>* all_passing = nullptr);

// Trace of (g(a,b,c), m), m >= 1, acting on the curve cohomology, computed as
// a fixed-point sum over y in the ambient field of ctx.  Throws
// AmbientTooSmall when the fixed locus does not fully split in the ambient.
CycNum geometric_trace(const heis::HeisContext& ctx, const CycField& F, const heis::GrpElt& g,
                       const Convention& conv = Convention{});

// Same quantity for the pure Frobenius element Fr(m); self-contained (builds
// the field F_{p^m} itself), valid for any m >= 1.
CycNum frobenius_power_trace(long p, long e, long m, const CycField& F,
                             const Convention& conv = Convention{});

// Twisted sum over F_{q^j}^x giving the Frobenius trace on the chi-eigenline;
// chi is the character of mu_{p^e+1} with index chi_index != 0 (value
// zeta_{p^e+1}^{chi_index} on a fixed generator).
CycNum kummer_twisted_count(long p, long e, long f, long chi_index, long j, const CycField& F,
                            const Convention& conv = Convention{});

struct FrobeniusDet {
    CycNum det;                      // det of Fr(f) on H^1 (closed-form target)
    CycNum det_fr1;                  // det of Fr(1)
    std::vector<CycNum> char_poly;   // monic char poly of Fr(1), low to high
    std::vector<CycNum> power_sums;  // s_1..s_{p^e}
};

// Determinant of Frobenius on H^1 via Newton identities from the power sums
// s_m = Tr Fr(m).  Throws NewtonDegenerate when |det|^2 != q^{p^e}.
FrobeniusDet frobenius_det(long p, long e, long f, const CycField& F,
                           const Convention& conv = Convention{});

// Closed form for det of Fr(f) on H^1.
CycNum frobenius_det_closed_form(long p, long e, long f, const CycField& F);

// Gauss sum sum_x chi(x) psi_0(Tr x) for the multiplicative character with
// chi(g) = zeta_{q-1}^{chi_index} on the field generator g.
CycNum gauss_sum(const gf::FieldDesc& field, long chi_index, const CycField& F);

// Jacobi symbol (m / m'), m' odd positive.
int jacobi(long m, long mprime);

// Quadratic residue symbol of a in its field: 0 / +1 / -1.
int residue_symbol(const gf::FFElem& a);

// The quadratic form nu_{n-2}(y) = -(1/n') sum_{i<=j} y_i y_j.
struct QuadForm {
    long p;
    long n;       // dimension is n-2
    long nprime;  // n = p^e n'
};

// sum over field^{n-2} of psi_0(Tr nu(y)).
CycNum quad_count(const QuadForm& qf, const gf::FieldDesc& field, const CycField& F);

// Determinant square class of nu_{n-2} in F_p^x / squares: +1 or -1 (p odd).
int quad_det_class(const QuadForm& qf);

// Character of the appendix variety representation at g (m >= 1): curve trace
// times the quadratic-form trace with the a-scaling, times p^{-m(n-1)/2}.
CycNum appendix_character(const heis::HeisContext& ctx, const CycField& F, const heis::GrpElt& g,
                          long n, long nprime, const Convention& conv = Convention{});

// Roots of a monic polynomial (coefficients low to high) under the complex
// embedding; deterministic Durand-Kerner iteration.
std::vector<std::complex<double>> char_poly_roots(const std::vector<CycNum>& poly);

}  // namespace aslab::traceo
