#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aslab/errors.hpp"

namespace aslab::gf {

class FieldLattice;

// One finite field F_{p^d} inside a lattice of compatibly embedded fields.
// The modulus is the index-least monic irreducible of degree d over F_p, so
// runs are reproducible.
class FieldDesc {
public:
    long p() const { return p_; }
    long degree() const { return d_; }
    mpz_class order() const;                      // p^d
    const std::vector<uint8_t>& modulus() const { return mod_; }
    const FieldLattice& lattice() const { return *lat_; }
    std::string str() const;

private:
    long p_ = 0;
    long d_ = 0;
    std::vector<uint8_t> mod_;                    // monic, size d+1
    const FieldLattice* lat_ = nullptr;
    // reduction rows for x^{d}..x^{2d-2}
    std::vector<std::vector<uint8_t>> red_;
    // coordinates in the lattice top field: top_mat_ columns are iota(x^j)
    std::vector<std::vector<uint8_t>> top_cols_;  // d columns, each length Ltop
    // solver data for pulling elements of the top field back to this field
    friend class FieldLattice;
    friend class FFElem;
};

class FFElem {
public:
    FFElem() : f_(nullptr) {}
    FFElem(const FieldDesc& f, std::vector<uint8_t> coeffs);

    static FFElem zero(const FieldDesc& f);
    static FFElem one(const FieldDesc& f);
    static FFElem from_int(const FieldDesc& f, long v);  // image of integer
    static FFElem from_index(const FieldDesc& f, unsigned long idx);

    const FieldDesc& field() const;
    const std::vector<uint8_t>& coeffs() const { return c_; }
    unsigned long index() const;   // sum c_i p^i
    bool is_zero() const;
    bool in_prime_field() const;
    long as_prime_int() const;     // requires in_prime_field()

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator-() const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator/(const FFElem& o) const;
    FFElem inv() const;
    FFElem pow(const mpz_class& e) const;
    FFElem pow(long e) const;
    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }
    bool operator<(const FFElem& o) const { return index() < o.index(); }

    std::string str() const;

private:
    const FieldDesc* f_;
    std::vector<uint8_t> c_;
    void check_same(const FFElem& o) const;
};

// x^{p^m} in the element's own field; m may be negative.
FFElem frobenius(const FFElem& x, long m);

// Relative trace / norm onto a subfield of the same lattice.
FFElem rel_trace(const FFElem& x, const FieldDesc& sub);
FFElem rel_norm(const FFElem& x, const FieldDesc& sub);

// All solutions of x^m = 1; size gcd(m, p^d - 1).
std::vector<FFElem> mu_roots(const FieldDesc& f, long m);

// Additive polynomial L(y) = sum coeff[i] * y^{p^i}; returns all solutions of
// L(y) = rhs inside the field (possibly fewer than the generic count when the
// field is too small -- callers decide whether that is FieldTooSmall).
std::vector<FFElem> additive_solve(const std::vector<FFElem>& coeff, const FFElem& rhs);

// Multiplicative generator (computed lazily; requires factoring p^d-1).
FFElem generator(const FieldDesc& f);

// Multiplicative order of x.
mpz_class mult_order(const FFElem& x);

// A lattice of compatibly embedded finite fields of characteristic p.  All
// member degrees divide the top degree; embeddings go through canonical
// subfields of the single top field, which makes every triangle commute.
class FieldLattice {
public:
    FieldLattice(long p, const std::vector<long>& degrees);
    ~FieldLattice();
    FieldLattice(const FieldLattice&) = delete;

    long p() const { return p_; }
    long top_degree() const { return top_degree_; }
    const FieldDesc& field(long degree) const;     // must be a member degree
    const FieldDesc& top() const { return field(top_degree_); }
    bool has_degree(long degree) const;

    // Move x between member fields (degree of target may be larger or, when
    // x actually lies in the smaller subfield, smaller).
    FFElem convert(const FFElem& x, const FieldDesc& to) const;

private:
    long p_;
    long top_degree_;
    std::map<long, std::unique_ptr<FieldDesc>> fields_;
    mutable std::map<long, FFElem> gen_cache_;

    std::vector<uint8_t> to_top(const FFElem& x) const;
    FFElem from_top(const std::vector<uint8_t>& v, const FieldDesc& to) const;
    friend FFElem generator(const FieldDesc& f);
    friend FFElem rel_trace(const FFElem& x, const FieldDesc& sub);
    friend FFElem rel_norm(const FFElem& x, const FieldDesc& sub);
    struct SolveData;
    std::map<long, std::unique_ptr<SolveData>> solvers_;
};

mpz_class pow_mpz(long base, long exp);
std::vector<mpz_class> factor_distinct_primes(mpz_class n);

}  // namespace aslab::gf
