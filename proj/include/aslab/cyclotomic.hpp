#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aslab/errors.hpp"

namespace aslab::cyclo {

using Rat = mpq_class;

// The cyclotomic field Q(zeta_N).  Elements are coefficient vectors on the
// power basis 1, zeta, ..., zeta^{phi(N)-1}; all arithmetic is exact and
// reduced modulo the N-th cyclotomic polynomial.
class CycField {
public:
    explicit CycField(long conductor);

    long conductor() const { return n_; }
    long degree() const { return phi_; }

    // Monic Phi_N, length degree()+1, integer coefficients.
    const std::vector<Rat>& minimal_poly() const { return phi_poly_; }

    // zeta^k on the power basis (k arbitrary, reduced mod N).
    const std::vector<Rat>& zeta_power(long k) const;

private:
    long n_;
    long phi_;
    std::vector<Rat> phi_poly_;
    // x^{phi..2phi-2} reduced mod Phi_N, used by the multiplication kernel.
    std::vector<std::vector<Rat>> red_;
    mutable std::map<long, std::vector<Rat>> pow_cache_;

    friend class CycNum;
};

class CycNum {
public:
    CycNum() : field_(nullptr) {}
    CycNum(const CycField& f, std::vector<Rat> coeffs);

    static CycNum zero(const CycField& f);
    static CycNum one(const CycField& f);
    static CycNum from_rat(const CycField& f, const Rat& r);
    static CycNum from_int(const CycField& f, long v);

    const CycField& field() const;
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const;  // coefficient of zeta^0

    CycNum operator+(const CycNum& o) const;
    CycNum operator-(const CycNum& o) const;
    CycNum operator-() const;
    CycNum operator*(const CycNum& o) const;
    CycNum operator/(const CycNum& o) const;
    CycNum inv() const;
    CycNum pow(long e) const;
    CycNum scaled(const Rat& r) const;

    // Complex conjugation: zeta -> zeta^{-1}.
    CycNum conj() const;

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    std::complex<double> embed() const;
    std::string str() const;

private:
    const CycField* field_;
    std::vector<Rat> c_;

    void check_same(const CycNum& o) const;
};

// zeta_N^k with k reduced mod N.
CycNum root_of_unity(const CycField& f, long k);

// Quadratic Gauss sum sum_{x in F_p} zeta_p^{x^2}; the artifact-wide meaning
// of the symbol sqrt((-1)^{(p-1)/2} p).  Requires p | N.
CycNum canonical_sqrt(const CycField& f, long p);

// Fixed branch choices: sqrt(-1) = zeta_8^2, sqrt(2) = zeta_8 + zeta_8^-1,
// sqrt(-2) = zeta_8 - zeta_8^-1.  All require 8 | N.
CycNum sqrt_minus1(const CycField& f);
CycNum sqrt2(const CycField& f);
CycNum sqrtm2(const CycField& f);

// Positive sqrt(p) for odd prime p (from the Gauss sum, branch-corrected),
// and p^{k/2} for integer k (possibly negative).
CycNum sqrt_p(const CycField& f, long p);
CycNum pow_p_half(const CycField& f, long p, long k);

long euler_phi(long n);

}  // namespace aslab::cyclo
