#include "aslab/trace_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aslab::traceo {

using gf::FFElem;
using gf::FieldDesc;
using gf::FieldLattice;
using heis::GrpElt;
using heis::HeisContext;

namespace {

long ipow(long b, long e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

// psi_0-weighted tally: counts[v] many terms psi_0(sign * v).
CycNum psi_tally(const CycField& F, long p, const std::vector<long>& counts, const Convention& c) {
    if (F.conductor() % p != 0) throw ConductorTooSmall("psi tally: p does not divide conductor");
    long step = F.conductor() / p;
    CycNum acc = CycNum::zero(F);
    for (long v = 0; v < p; ++v) {
        if (!counts[v]) continue;
        long a = (c.psi_arg >= 0 ? v : (p - v) % p);
        acc = acc + cyclo::root_of_unity(F, step * a).scaled(cyclo::Rat(counts[v]));
    }
    if (c.overall < 0) acc = -acc;
    return acc;
}

}  // namespace

CycNum frobenius_power_trace(long p, long e, long m, const CycField& F, const Convention& conv) {
    if (m < 1) throw InvalidParams("frobenius_power_trace: m >= 1 required");
    FieldLattice lat(p, {m});
    const FieldDesc& Fm = lat.field(m);
    std::vector<long> counts(p, 0);
    unsigned long size = 1;
    for (long i = 0; i < m; ++i) size *= static_cast<unsigned long>(p);
    for (unsigned long idx = 0; idx < size; ++idx) {
        FFElem y = FFElem::from_index(Fm, idx);
        FFElem ype1 = gf::frobenius(y, e) * y;  // y^{p^e+1}
        FFElem u = FFElem::zero(Fm);
        FFElem cur = ype1;
        for (long j = 0; j < m; ++j) {
            u = u + cur;
            cur = gf::frobenius(cur, 1);
        }
        if (!u.in_prime_field()) throw CheckFailed("frobenius_power_trace: u(y) not in F_p");
        counts[u.as_prime_int()]++;
    }
    return psi_tally(F, p, counts, conv);
}

CycNum geometric_trace(const HeisContext& ctx, const CycField& F, const GrpElt& g,
                       const Convention& conv) {
    if (g.m < 1) throw InvalidParams("geometric_trace: m >= 1 required");
    long p = ctx.p();
    long e = ctx.e();
    long m = static_cast<long>(g.m);
    const FieldDesc& A = ctx.ambient();
    // fixed points: alpha * y^{p^m} - y + alpha * b^{p^{e+m}} = 0,
    // alpha = a^{p^m}
    FFElem alpha = gf::frobenius(g.q.a, m);
    std::vector<FFElem> L(m + 1, FFElem::zero(A));
    L[0] = FFElem::from_int(A, -1);
    L[m] = alpha;
    FFElem rhs = -(gf::frobenius(g.q.a * gf::frobenius(g.q.b, e), m));
    auto fixed = gf::additive_solve(L, rhs);
    double expect = std::pow(static_cast<double>(p), static_cast<double>(m));
    if (fixed.empty() || static_cast<double>(fixed.size()) + 0.5 < expect)
        throw AmbientTooSmall("geometric_trace: fixed locus does not split in ambient field");

    std::vector<long> counts(p, 0);
    for (const auto& y : fixed) {
        // S = sum_{i<e} (b*y)^{p^i} + c
        FFElem S = g.q.c;
        FFElem by = g.q.b * y;
        for (long i = 0; i < e; ++i) S = S + gf::frobenius(by, i);
        // u = sum_{j<m} (y^{p^e+1})^{p^j} + S^{p^m}
        FFElem ype1 = gf::frobenius(y, e) * y;
        FFElem u = gf::frobenius(S, m);
        FFElem cur = ype1;
        for (long j = 0; j < m; ++j) {
            u = u + cur;
            cur = gf::frobenius(cur, 1);
        }
        if (!u.in_prime_field()) throw CheckFailed("geometric_trace: u(y) not in F_p");
        counts[u.as_prime_int()]++;
    }
    return psi_tally(F, p, counts, conv);
}

Convention calibrate_convention(std::vector<Convention>* all_passing) {
    std::vector<Convention> passing;
    for (int overall : {-1, +1}) {
        for (int psi_arg : {+1, -1}) {
            Convention c{overall, psi_arg};
            try {
                // Tr Fr(1) at p=3,e=1 equals -(1 + 2 zeta_3)
                CycField F24(24);
                CycNum expect3 =
                    -(CycNum::one(F24) + cyclo::root_of_unity(F24, 8).scaled(cyclo::Rat(2)));
                if (!(frobenius_power_trace(3, 1, 1, F24, c) == expect3)) continue;
                // Tr Fr(1) at p=2 equals 0
                CycField F8(8);
                if (!frobenius_power_trace(2, 1, 1, F8, c).is_zero()) continue;
                // Tr Fr(2e0) at p=3,e=1 equals 3
                if (!(frobenius_power_trace(3, 1, 2, F24, c) == CycNum::from_int(F24, 3)))
                    continue;
                // Tr of inverse of bom-g at p=2, e=2 equals -2
                heis::HeisContext ctx(2, 2, 1);
                GrpElt gi = ctx.inv(ctx.bom_g());
                if (!(geometric_trace(ctx, F8, gi, c) == CycNum::from_int(F8, -2))) continue;
                passing.push_back(c);
            } catch (const Error&) {
                continue;
            }
        }
    }
    if (all_passing) *all_passing = passing;
    if (passing.empty()) throw CheckFailed("calibrate_convention: no convention satisfies the pinned traces");
    return passing.front();
}

CycNum kummer_twisted_count(long p, long e, long f, long chi_index, long j, const CycField& F,
                            const Convention& conv) {
    long pe1 = ipow(p, e) + 1;
    if (chi_index % pe1 == 0) throw InvalidParams("kummer_twisted_count: chi must be nontrivial");
    long deg = f * j;
    FieldLattice lat(p, {deg});
    const FieldDesc& Fq = lat.field(deg);
    mpz_class q1 = Fq.order() - 1;
    if (q1 % pe1 != 0)
        throw InvalidParams("kummer_twisted_count: p^e+1 does not divide q^j - 1");
    long N = F.conductor();
    if (N % p != 0 || N % pe1 != 0)
        throw ConductorTooSmall("kummer_twisted_count: conductor lacks required roots of unity");
    FFElem g = gf::generator(Fq);
    // Descended sum on the base G_m coordinate z (the curve covers it by
    // z = y^{p^e+1}): -sum_z chi(z^{(q^j-1)/(p^e+1)}) psi_0(Tr z).  Iterating
    // z = g^k makes the Kummer symbol a grading, no discrete logs needed.
    CycNum acc = CycNum::zero(F);
    FFElem z = FFElem::one(Fq);
    unsigned long qm1 = static_cast<unsigned long>(q1.get_ui());
    long pstep = N / p;
    for (unsigned long k = 0; k < qm1; ++k) {
        FFElem t = z;
        FFElem cur = z;
        for (long i = 1; i < deg; ++i) {
            cur = gf::frobenius(cur, 1);
            t = t + cur;
        }
        if (!t.in_prime_field()) throw CheckFailed("kummer: trace not in prime field");
        long psi_exp = t.as_prime_int();
        if (conv.psi_arg < 0) psi_exp = (p - psi_exp) % p;
        long chi_exp = static_cast<long>((static_cast<unsigned long>(chi_index) * (k % pe1)) % pe1);
        acc = acc + cyclo::root_of_unity(F, pstep * psi_exp + (N / pe1) * chi_exp);
        z = z * g;
    }
    if (conv.overall < 0) acc = -acc;
    return acc;
}

FrobeniusDet frobenius_det(long p, long e, long f, const CycField& F, const Convention& conv) {
    long dim = ipow(p, e);
    FrobeniusDet out;
    out.power_sums.reserve(dim);
    for (long m = 1; m <= dim; ++m)
        out.power_sums.push_back(frobenius_power_trace(p, e, m, F, conv));
    // Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} s_i e_{k-i}
    std::vector<CycNum> elem(dim + 1, CycNum::zero(F));
    elem[0] = CycNum::one(F);
    for (long k = 1; k <= dim; ++k) {
        CycNum acc = CycNum::zero(F);
        for (long i = 1; i <= k; ++i) {
            CycNum term = out.power_sums[i - 1] * elem[k - i];
            if (i % 2 == 0) term = -term;
            acc = acc + term;
        }
        elem[k] = acc.scaled(cyclo::Rat(1, k));
    }
    out.det_fr1 = elem[dim];
    // Weil consistency: |det|^2 = p^{dim}
    mpz_class target = gf::pow_mpz(p, dim);
    CycNum norm = out.det_fr1 * out.det_fr1.conj();
    if (!(norm == CycNum::from_rat(F, cyclo::Rat(target))))
        throw NewtonDegenerate("frobenius_det: |det|^2 != q^{p^e}; inconsistent power sums");
    out.det = out.det_fr1.pow(f);
    // monic char poly of Fr(1): x^dim - e1 x^{dim-1} + e2 x^{dim-2} - ...
    out.char_poly.resize(dim + 1, CycNum::zero(F));
    for (long k = 0; k <= dim; ++k) {
        CycNum c = elem[dim - k];
        if ((dim - k) % 2 == 1) c = -c;
        out.char_poly[k] = c;
    }
    return out;
}

CycNum frobenius_det_closed_form(long p, long e, long f, const CycField& F) {
    long dim = ipow(p, e);
    if (p == 2) {
        mpz_class z = gf::pow_mpz(2, f * (dim / 2));
        return CycNum::from_rat(F, cyclo::Rat(z));
    }
    // { sqrt(-1)^{(p+3)/2} (2/p) }^f * q^{p^e/2}
    CycNum unit = cyclo::sqrt_minus1(F).pow((p + 3) / 2).scaled(cyclo::Rat(jacobi(2, p)));
    return unit.pow(f) * cyclo::pow_p_half(F, p, f * dim);
}

CycNum gauss_sum(const FieldDesc& field, long chi_index, const CycField& F) {
    long p = field.p();
    mpz_class q1z = field.order() - 1;
    unsigned long q1 = static_cast<unsigned long>(q1z.get_ui());
    long N = F.conductor();
    // character value zeta_{q-1}^{chi_index * k} must live in F
    if ((static_cast<unsigned long>(N) * static_cast<unsigned long>(
             ((chi_index % static_cast<long>(q1)) + q1) % q1)) % q1 != 0)
        throw ConductorTooSmall("gauss_sum: character values not in the cyclotomic field");
    long chi_step = static_cast<long>((static_cast<unsigned long>(N) *
                                       static_cast<unsigned long>(((chi_index % static_cast<long>(q1)) + q1) % q1)) /
                                      q1);
    const FieldDesc* fp = nullptr;
    // absolute trace needs the prime field; compute via Frobenius sums directly
    (void)fp;
    FFElem g = gf::generator(field);
    CycNum acc = CycNum::zero(F);
    FFElem x = FFElem::one(field);
    long pstep = N / p;
    if (N % p != 0) throw ConductorTooSmall("gauss_sum: p does not divide conductor");
    for (unsigned long k = 0; k < q1; ++k) {
        FFElem t = x;
        FFElem cur = x;
        for (long i = 1; i < field.degree(); ++i) {
            cur = gf::frobenius(cur, 1);
            t = t + cur;
        }
        if (!t.in_prime_field()) throw CheckFailed("gauss_sum: trace not in prime field");
        acc = acc + cyclo::root_of_unity(
                        F, pstep * t.as_prime_int() + chi_step * static_cast<long>(k % q1));
        x = x * g;
    }
    return acc;
}

int jacobi(long m, long mprime) {
    if (mprime <= 0 || mprime % 2 == 0) throw InvalidParams("jacobi: m' must be odd positive");
    long a = m % mprime;
    if (a < 0) a += mprime;
    long n = mprime;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int residue_symbol(const FFElem& a) {
    if (a.is_zero()) return 0;
    mpz_class h = (a.field().order() - 1) / 2;
    FFElem v = a.pow(h);
    if (v == FFElem::one(a.field())) return 1;
    if (v == -FFElem::one(a.field())) return -1;
    throw CheckFailed("residue_symbol: p = 2 field has no quadratic symbol");
}

CycNum quad_count(const QuadForm& qf, const FieldDesc& field, const CycField& F) {
    long p = field.p();
    long dim = qf.n - 2;
    if (dim < 0) throw InvalidParams("quad_count: n >= 2 required");
    if (dim == 0) return CycNum::one(F);
    FFElem ninv = FFElem::from_int(field, qf.nprime).inv();
    unsigned long size = 1;
    for (long i = 0; i < dim; ++i) size *= mpz_class(field.order()).get_ui();
    std::vector<long> counts(p, 0);
    std::vector<unsigned long> digits(dim, 0);
    unsigned long qsize = mpz_class(field.order()).get_ui();
    for (unsigned long it = 0; it < size; ++it) {
        unsigned long t = it;
        std::vector<FFElem> y;
        y.reserve(dim);
        for (long i = 0; i < dim; ++i) {
            y.push_back(FFElem::from_index(field, t % qsize));
            t /= qsize;
        }
        FFElem s = FFElem::zero(field);
        for (long i = 0; i < dim; ++i)
            for (long j = i; j < dim; ++j) s = s + y[i] * y[j];
        FFElem nu = -(ninv * s);
        // absolute trace
        FFElem tr = nu;
        FFElem cur = nu;
        for (long i = 1; i < field.degree(); ++i) {
            cur = gf::frobenius(cur, 1);
            tr = tr + cur;
        }
        if (!tr.in_prime_field()) throw CheckFailed("quad_count: trace not in prime field");
        counts[tr.as_prime_int()]++;
    }
    CycNum acc = CycNum::zero(F);
    long step = F.conductor() / p;
    for (long v = 0; v < p; ++v)
        if (counts[v]) acc = acc + cyclo::root_of_unity(F, step * v).scaled(cyclo::Rat(counts[v]));
    return acc;
}

int quad_det_class(const QuadForm& qf) {
    long p = qf.p;
    if (p == 2) throw InvalidParams("quad_det_class: p odd required");
    long dim = qf.n - 2;
    if (dim == 0) return 1;
    // Gram matrix: A_ii = -1/n', A_ij = -1/(2n') for i != j, over F_p.
    auto inv_mod = [&](long a) {
        long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
        while (nr) {
            long q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return ((t % p) + p) % p;
    };
    long ninv = inv_mod(qf.nprime);
    long diag = (p - ninv) % p;                        // -1/n'
    long off = (static_cast<long>(p) - (ninv * inv_mod(2)) % p) % p;  // -1/(2n')
    std::vector<std::vector<long>> A(dim, std::vector<long>(dim, off));
    for (long i = 0; i < dim; ++i) A[i][i] = diag;
    // determinant mod p by Gaussian elimination
    long det = 1;
    for (long c = 0; c < dim; ++c) {
        long piv = -1;
        for (long r = c; r < dim; ++r)
            if (A[r][c] % p != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = (p - det) % p;
        }
        det = (det * A[c][c]) % p;
        long inv = inv_mod(A[c][c]);
        for (long r = c + 1; r < dim; ++r) {
            long f = (A[r][c] * inv) % p;
            if (!f) continue;
            for (long j = c; j < dim; ++j) A[r][j] = ((A[r][j] - f * A[c][j]) % p + p) % p;
        }
    }
    // square class via Euler criterion on the integer det
    long sym = 1, base = det % p, exp = (p - 1) / 2, acc = 1;
    while (exp) {
        if (exp & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        exp >>= 1;
    }
    sym = (acc == 1) ? 1 : -1;
    return sym;
}

CycNum appendix_character(const HeisContext& ctx, const CycField& F, const GrpElt& g, long n,
                          long nprime, const Convention& conv) {
    long p = ctx.p();
    long e = ctx.e();
    long m = static_cast<long>(g.m);
    if (m < 1) throw InvalidParams("appendix_character: m >= 1 required");
    long dim = n - 2;
    CycNum curve = geometric_trace(ctx, F, g, conv);
    CycNum quad = CycNum::one(F);
    if (dim > 0) {
        if (p == 2)
            throw UnsupportedStep("appendix_character: p = 2 supported only for n = 2");
        const FieldDesc& A = ctx.ambient();
        // per-coordinate fixed points of y -> (lambda y)^{p^m},
        // lambda = a^{(p^e+1)/2}
        FFElem lambda = g.q.a.pow((ipow(p, e) + 1) / 2);
        std::vector<FFElem> L(m + 1, FFElem::zero(A));
        L[0] = FFElem::from_int(A, -1);
        L[m] = gf::frobenius(lambda, m);
        auto fixed = gf::additive_solve(L, FFElem::zero(A));
        double expect = std::pow(static_cast<double>(p), static_cast<double>(m));
        if (static_cast<double>(fixed.size()) + 0.5 < expect)
            throw AmbientTooSmall("appendix_character: scaling fixed locus does not split");
        FFElem ninv = FFElem::from_int(A, nprime).inv();
        std::vector<long> counts(p, 0);
        std::vector<size_t> digit(dim, 0);
        size_t total = 1;
        for (long i = 0; i < dim; ++i) total *= fixed.size();
        for (size_t it = 0; it < total; ++it) {
            size_t t = it;
            std::vector<FFElem> y;
            y.reserve(dim);
            for (long i = 0; i < dim; ++i) {
                y.push_back(fixed[t % fixed.size()]);
                t /= fixed.size();
            }
            FFElem s = FFElem::zero(A);
            for (long i = 0; i < dim; ++i)
                for (long j = i; j < dim; ++j) s = s + y[i] * y[j];
            FFElem nu = -(ninv * s);
            FFElem u = FFElem::zero(A);
            FFElem cur = nu;
            for (long j = 0; j < m; ++j) {
                u = u + cur;
                cur = gf::frobenius(cur, 1);
            }
            if (!u.in_prime_field()) throw CheckFailed("appendix_character: u not in F_p");
            counts[u.as_prime_int()]++;
        }
        long step = F.conductor() / p;
        CycNum acc = CycNum::zero(F);
        for (long v = 0; v < p; ++v) {
            if (!counts[v]) continue;
            long a = (conv.psi_arg >= 0 ? v : (p - v) % p);
            acc = acc + cyclo::root_of_unity(F, step * a).scaled(cyclo::Rat(counts[v]));
        }
        if (dim % 2 == 1 && conv.overall < 0) acc = -acc;
        quad = acc;
    }
    return curve * quad * cyclo::pow_p_half(F, p, -m * (n - 1));
}

std::vector<std::complex<double>> char_poly_roots(const std::vector<CycNum>& poly) {
    long deg = static_cast<long>(poly.size()) - 1;
    if (deg < 1) return {};
    std::vector<std::complex<double>> c(deg + 1);
    for (long i = 0; i <= deg; ++i) c[i] = poly[i].embed();
    // normalize monic
    for (long i = 0; i <= deg; ++i) c[i] /= c[deg];
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (long i = deg; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    std::vector<std::complex<double>> z(deg);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> cur(1.0, 0.0);
    for (long i = 0; i < deg; ++i) {
        cur *= seed;
        z[i] = cur;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (long i = 0; i < deg; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (long j = 0; j < deg; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            std::complex<double> delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

}  // namespace aslab::traceo
