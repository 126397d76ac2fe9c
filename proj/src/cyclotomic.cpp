#include "aslab/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace aslab::cyclo {

namespace {

// Exact division of integer polynomials (as Rat vectors), quotient known to
// be integral.  a /= b, b monic-leading.
std::vector<Rat> poly_divide_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
    long db = static_cast<long>(b.size()) - 1;
    long da = static_cast<long>(a.size()) - 1;
    std::vector<Rat> q(da - db + 1);
    for (long i = da; i >= db; --i) {
        Rat coef = a[i] / b[db];
        q[i - db] = coef;
        if (coef != 0) {
            for (long j = 0; j <= db; ++j) a[i - db + j] -= coef * b[j];
        }
    }
    return q;
}

std::vector<Rat> cyclotomic_poly(long n) {
    // x^n - 1 divided by Phi_d for all proper divisors d.
    std::vector<Rat> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        std::vector<Rat> phid = cyclotomic_poly(d);
        num = poly_divide_exact(std::move(num), phid);
    }
    return num;
}

}  // namespace

long euler_phi(long n) {
    long res = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            res -= res / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) res -= res / n;
    return res;
}

CycField::CycField(long conductor) : n_(conductor) {
    if (n_ < 1) throw InvalidParams("CycField: conductor must be >= 1");
    phi_poly_ = cyclotomic_poly(n_);
    phi_ = static_cast<long>(phi_poly_.size()) - 1;
    // Reduction table: x^k mod Phi_N for k = phi .. 2phi-2.
    red_.resize(phi_ > 1 ? phi_ - 1 : 0);
    std::vector<Rat> cur(phi_);  // start with x^phi mod Phi
    for (long j = 0; j < phi_; ++j) cur[j] = -phi_poly_[j];
    for (long k = 0; k + 1 < phi_; ++k) {
        red_[k] = cur;
        // multiply by x, reduce.
        std::vector<Rat> nxt(phi_);
        Rat top = cur[phi_ - 1];
        for (long j = phi_ - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        nxt[0] = 0;
        if (top != 0)
            for (long j = 0; j < phi_; ++j) nxt[j] -= top * phi_poly_[j];
        cur = std::move(nxt);
    }
}

const std::vector<Rat>& CycField::zeta_power(long k) const {
    long kk = k % n_;
    if (kk < 0) kk += n_;
    auto it = pow_cache_.find(kk);
    if (it != pow_cache_.end()) return it->second;
    std::vector<Rat> v(phi_);
    if (kk < phi_) {
        v[kk] = 1;
    } else {
        // kk <= n-1 <= ... reduce x^kk step by step from the table.
        // x^kk = x^{kk-phi} * x^phi; iterate.
        std::vector<Rat> cur(phi_);
        cur[0] = 1;
        long rem = kk;
        while (rem >= phi_) {
            // multiply cur by x^{phi} is awkward; instead shift by one.
            rem -= 1;
            // cur *= x
            Rat top = cur[phi_ - 1];
            for (long j = phi_ - 1; j >= 1; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (top != 0)
                for (long j = 0; j < phi_; ++j) cur[j] -= top * phi_poly_[j];
        }
        // now multiply by x^rem
        for (long s = 0; s < rem; ++s) {
            Rat top = cur[phi_ - 1];
            for (long j = phi_ - 1; j >= 1; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (top != 0)
                for (long j = 0; j < phi_; ++j) cur[j] -= top * phi_poly_[j];
        }
        v = std::move(cur);
    }
    auto [pos, _] = pow_cache_.emplace(kk, std::move(v));
    return pos->second;
}

CycNum::CycNum(const CycField& f, std::vector<Rat> coeffs) : field_(&f), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != f.degree())
        throw InvalidParams("CycNum: coefficient vector length != degree");
}

const CycField& CycNum::field() const {
    if (!field_) throw InvalidParams("CycNum: uninitialized value");
    return *field_;
}

CycNum CycNum::zero(const CycField& f) { return CycNum(f, std::vector<Rat>(f.degree())); }

CycNum CycNum::one(const CycField& f) { return from_rat(f, Rat(1)); }

CycNum CycNum::from_rat(const CycField& f, const Rat& r) {
    std::vector<Rat> v(f.degree());
    v[0] = r;
    return CycNum(f, std::move(v));
}

CycNum CycNum::from_int(const CycField& f, long x) { return from_rat(f, Rat(x)); }

bool CycNum::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycNum::rational_part() const { return c_.empty() ? Rat(0) : c_[0]; }

void CycNum::check_same(const CycNum& o) const {
    if (field_ == nullptr || o.field_ == nullptr || field_ != o.field_)
        throw FieldMismatch("CycNum: operands in different cyclotomic fields");
}

CycNum CycNum::operator+(const CycNum& o) const {
    check_same(o);
    std::vector<Rat> v(c_);
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
    return CycNum(*field_, std::move(v));
}

CycNum CycNum::operator-(const CycNum& o) const {
    check_same(o);
    std::vector<Rat> v(c_);
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
    return CycNum(*field_, std::move(v));
}

CycNum CycNum::operator-() const {
    std::vector<Rat> v(c_);
    for (auto& x : v) x = -x;
    return CycNum(*field_, std::move(v));
}

CycNum CycNum::operator*(const CycNum& o) const {
    check_same(o);
    long phi = field_->degree();
    std::vector<Rat> prod(2 * phi - 1);
    for (long i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    std::vector<Rat> v(prod.begin(), prod.begin() + phi);
    for (long k = phi; k <= 2 * phi - 2; ++k) {
        if (prod[k] == 0) continue;
        const auto& row = field_->red_[k - phi];
        for (long j = 0; j < phi; ++j)
            if (row[j] != 0) v[j] += prod[k] * row[j];
    }
    return CycNum(*field_, std::move(v));
}

CycNum CycNum::scaled(const Rat& r) const {
    std::vector<Rat> v(c_);
    for (auto& x : v) x *= r;
    return CycNum(*field_, std::move(v));
}

CycNum CycNum::inv() const {
    if (is_zero()) throw DivisionByZero("CycNum: inverse of zero");
    // Extended Euclid in Q[x]: find u with u*a = 1 mod Phi_N.
    long phi = field_->degree();
    std::vector<Rat> r0 = field_->minimal_poly();
    std::vector<Rat> r1 = c_;
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rat> s0(1, Rat(0)), s1(1, Rat(1));  // coeffs of a
    auto deg = [](const std::vector<Rat>& p) { return static_cast<long>(p.size()) - 1; };
    auto trim = [](std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    while (deg(r1) > 0) {
        // r0 = q*r1 + r2
        std::vector<Rat> q(deg(r0) - deg(r1) + 1);
        std::vector<Rat> r2 = r0;
        for (long i = deg(r0); i >= deg(r1); --i) {
            if (static_cast<long>(r2.size()) - 1 < i) continue;
            Rat coef = r2[i] / r1[deg(r1)];
            if (coef == 0) continue;
            q[i - deg(r1)] = coef;
            for (long j = 0; j <= deg(r1); ++j) r2[i - deg(r1) + j] -= coef * r1[j];
            trim(r2);
        }
        trim(r2);
        // s2 = s0 - q*s1
        std::vector<Rat> s2 = s0;
        s2.resize(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) throw DivisionByZero("CycNum: element not invertible (zero divisor?)");
    }
    // r1 is a nonzero constant c; inverse = s1 / c.
    Rat cst = r1[0];
    std::vector<Rat> v(phi);
    for (size_t i = 0; i < s1.size() && i < static_cast<size_t>(phi); ++i) v[i] = s1[i] / cst;
    return CycNum(*field_, std::move(v));
}

CycNum CycNum::operator/(const CycNum& o) const {
    check_same(o);
    return *this * o.inv();
}

CycNum CycNum::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    CycNum acc = one(*field_);
    CycNum base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

CycNum CycNum::conj() const {
    const CycField& f = *field_;
    CycNum acc = zero(f);
    for (long i = 0; i < f.degree(); ++i) {
        if (c_[i] == 0) continue;
        const auto& zp = f.zeta_power(-i);
        std::vector<Rat> term(zp);
        for (auto& x : term) x *= c_[i];
        acc = acc + CycNum(f, std::move(term));
    }
    return acc;
}

bool CycNum::operator==(const CycNum& o) const {
    check_same(o);
    return c_ == o.c_;
}

std::complex<double> CycNum::embed() const {
    const double tau = 2.0 * std::numbers::pi / static_cast<double>(field_->conductor());
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double x = c_[i].get_d();
        acc += x * std::complex<double>(std::cos(tau * i), std::sin(tau * i));
    }
    return acc;
}

std::string CycNum::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i > 0) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CycNum root_of_unity(const CycField& f, long k) {
    return CycNum(f, f.zeta_power(k));
}

CycNum canonical_sqrt(const CycField& f, long p) {
    if (p < 2) throw InvalidParams("canonical_sqrt: p must be prime");
    if (f.conductor() % p != 0)
        throw ConductorTooSmall("canonical_sqrt: conductor not divisible by p");
    long step = f.conductor() / p;
    CycNum acc = CycNum::zero(f);
    for (long x = 0; x < p; ++x) acc = acc + root_of_unity(f, step * ((x * x) % p));
    return acc;
}

static void need8(const CycField& f) {
    if (f.conductor() % 8 != 0)
        throw ConductorTooSmall("square-root symbols need 8 | conductor");
}

CycNum sqrt_minus1(const CycField& f) {
    need8(f);
    return root_of_unity(f, f.conductor() / 4);
}

CycNum sqrt2(const CycField& f) {
    need8(f);
    return root_of_unity(f, f.conductor() / 8) + root_of_unity(f, -f.conductor() / 8);
}

CycNum sqrtm2(const CycField& f) {
    need8(f);
    return root_of_unity(f, f.conductor() / 8) - root_of_unity(f, -f.conductor() / 8);
}

CycNum sqrt_p(const CycField& f, long p) {
    if (p == 2) return sqrt2(f);
    CycNum g = canonical_sqrt(f, p);
    if (p % 4 == 1) return g;
    // g = i*sqrt(p); sqrt(p) = -i * g.
    return -(sqrt_minus1(f) * g);
}

CycNum pow_p_half(const CycField& f, long p, long k) {
    // p^{k/2}: integral part times an optional sqrt(p).
    long q = (k >= 0 ? k / 2 : -((-k + 1) / 2));
    long r = k - 2 * q;  // 0 or 1
    Rat scale;
    if (q >= 0) {
        mpz_class z;
        mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(q));
        scale = Rat(z);
    } else {
        mpz_class z;
        mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(-q));
        scale = Rat(1) / Rat(z);
    }
    CycNum res = CycNum::from_rat(f, scale);
    if (r) res = res * sqrt_p(f, p);
    return res;
}

}  // namespace aslab::cyclo
