#include "aslab/gf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace aslab::gf {

namespace {

long mod_inv_long(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

using Poly = std::vector<uint8_t>;  // over F_p, little-endian

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<uint8_t>((r[i + j] + 1L * a[i] * b[j]) % p);
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& f, long p) {
    long df = static_cast<long>(f.size()) - 1;
    long inv_lead = mod_inv_long(f[df], p);
    trim(a);
    while (static_cast<long>(a.size()) - 1 >= df) {
        long da = static_cast<long>(a.size()) - 1;
        long c = (1L * a[da] * inv_lead) % p;
        for (long j = 0; j <= df; ++j) {
            long idx = da - df + j;
            a[idx] = static_cast<uint8_t>(((a[idx] - c * f[j]) % p + p) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_powmod(Poly base, mpz_class e, const Poly& f, long p) {
    Poly acc{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = poly_mod(poly_mul(acc, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return acc;
}

Poly poly_gcd(Poly a, Poly b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long inv = mod_inv_long(a.back(), p);
        for (auto& c : a) c = static_cast<uint8_t>((1L * c * inv) % p);
    }
    return a;
}

bool is_irreducible(const Poly& f, long p) {
    long n = static_cast<long>(f.size()) - 1;
    if (n < 1) return false;
    // x^{p^n} == x mod f
    Poly x{0, 1};
    mpz_class pn = pow_mpz(p, n);
    Poly xq = poly_powmod(x, pn, f, p);
    Poly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = static_cast<uint8_t>(((diff[1] - 1) % p + p) % p);
    trim(diff);
    if (!diff.empty()) return false;
    long m = n;
    for (long q = 2; q * q <= m; ++q) {
        if (m % q) continue;
        while (m % q == 0) m /= q;
        Poly xs = poly_powmod(x, pow_mpz(p, n / q), f, p);
        Poly d = xs;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = static_cast<uint8_t>(((d[1] - 1) % p + p) % p);
        Poly g = poly_gcd(d, f, p);
        if (static_cast<long>(g.size()) - 1 != 0) return false;
    }
    if (m > 1) {
        Poly xs = poly_powmod(x, pow_mpz(p, n / m), f, p);
        Poly d = xs;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = static_cast<uint8_t>(((d[1] - 1) % p + p) % p);
        Poly g = poly_gcd(d, f, p);
        if (static_cast<long>(g.size()) - 1 != 0) return false;
    }
    return true;
}

Poly least_irreducible(long p, long d) {
    if (d == 1) return Poly{0, 1};  // x
    // enumerate non-leading coefficients by index
    mpz_class limit = pow_mpz(p, d);
    for (mpz_class idx = 0; idx < limit; ++idx) {
        Poly f(d + 1, 0);
        mpz_class t = idx;
        for (long i = 0; i < d; ++i) {
            f[i] = static_cast<uint8_t>(mpz_class(t % p).get_ui());
            t /= p;
        }
        f[d] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw Error("least_irreducible: exhausted search (impossible)");
}

}  // namespace

mpz_class pow_mpz(long base, long exp) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exp));
    return z;
}

static void rho_factor(const mpz_class& n, std::vector<mpz_class>& out);

std::vector<mpz_class> factor_distinct_primes(mpz_class n) {
    std::vector<mpz_class> primes;
    for (long q : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (n % q == 0) {
            primes.emplace_back(q);
            while (n % q == 0) n /= q;
        }
    }
    for (long q = 17; q < 100000 && n > 1; q += 2) {
        if (n % q == 0) {
            primes.emplace_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) rho_factor(n, primes);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

static void rho_factor(const mpz_class& n, std::vector<mpz_class>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.push_back(n);
        return;
    }
    // Pollard rho with deterministic increments.
    for (long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) {
            rho_factor(d, out);
            mpz_class rest = n / d;
            while (rest % d == 0) rest /= d;
            rho_factor(rest, out);
            return;
        }
    }
}

mpz_class FieldDesc::order() const { return pow_mpz(p_, d_); }

std::string FieldDesc::str() const {
    std::ostringstream os;
    os << "F_" << p_ << "^" << d_;
    return os.str();
}

FFElem::FFElem(const FieldDesc& f, std::vector<uint8_t> coeffs) : f_(&f), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != f.degree())
        throw InvalidParams("FFElem: wrong coefficient length");
}

const FieldDesc& FFElem::field() const {
    if (!f_) throw InvalidParams("FFElem: uninitialized");
    return *f_;
}

FFElem FFElem::zero(const FieldDesc& f) { return FFElem(f, std::vector<uint8_t>(f.degree(), 0)); }

FFElem FFElem::one(const FieldDesc& f) { return from_int(f, 1); }

FFElem FFElem::from_int(const FieldDesc& f, long v) {
    std::vector<uint8_t> c(f.degree(), 0);
    long vv = v % f.p();
    if (vv < 0) vv += f.p();
    c[0] = static_cast<uint8_t>(vv);
    return FFElem(f, std::move(c));
}

FFElem FFElem::from_index(const FieldDesc& f, unsigned long idx) {
    std::vector<uint8_t> c(f.degree(), 0);
    for (long i = 0; i < f.degree() && idx; ++i) {
        c[i] = static_cast<uint8_t>(idx % f.p());
        idx /= f.p();
    }
    return FFElem(f, std::move(c));
}

unsigned long FFElem::index() const {
    unsigned long idx = 0;
    for (long i = field().degree() - 1; i >= 0; --i) idx = idx * f_->p() + c_[i];
    return idx;
}

bool FFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint8_t x) { return x == 0; });
}

bool FFElem::in_prime_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

long FFElem::as_prime_int() const {
    if (!in_prime_field()) throw Error("FFElem: not in the prime field");
    return c_[0];
}

void FFElem::check_same(const FFElem& o) const {
    if (f_ == nullptr || o.f_ == nullptr || f_ != o.f_)
        throw FieldMismatch("FFElem: operands in different fields");
}

FFElem FFElem::operator+(const FFElem& o) const {
    check_same(o);
    std::vector<uint8_t> c(c_);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<uint8_t>((c[i] + o.c_[i]) % f_->p());
    return FFElem(*f_, std::move(c));
}

FFElem FFElem::operator-(const FFElem& o) const {
    check_same(o);
    std::vector<uint8_t> c(c_);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<uint8_t>(((c[i] - o.c_[i]) % f_->p() + f_->p()) % f_->p());
    return FFElem(*f_, std::move(c));
}

FFElem FFElem::operator-() const {
    std::vector<uint8_t> c(c_);
    for (auto& x : c) x = static_cast<uint8_t>((f_->p() - x) % f_->p());
    return FFElem(*f_, std::move(c));
}

FFElem FFElem::operator*(const FFElem& o) const {
    check_same(o);
    long d = f_->degree();
    long p = f_->p();
    std::vector<int> prod(2 * d - 1, 0);
    for (long i = 0; i < d; ++i) {
        if (!c_[i]) continue;
        for (long j = 0; j < d; ++j)
            if (o.c_[j]) prod[i + j] = static_cast<int>((prod[i + j] + 1L * c_[i] * o.c_[j]) % p);
    }
    std::vector<uint8_t> v(d, 0);
    for (long i = 0; i < d; ++i) v[i] = static_cast<uint8_t>(prod[i]);
    for (long k = d; k <= 2 * d - 2; ++k) {
        if (!prod[k]) continue;
        const auto& row = f_->red_[k - d];
        for (long j = 0; j < d; ++j)
            if (row[j]) v[j] = static_cast<uint8_t>((v[j] + 1L * prod[k] * row[j]) % p);
    }
    return FFElem(*f_, std::move(v));
}

FFElem FFElem::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(mpz_class(-e));
    FFElem acc = one(*f_);
    FFElem base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FFElem FFElem::pow(long e) const { return pow(mpz_class(e)); }

FFElem FFElem::inv() const {
    if (is_zero()) throw DivisionByZero("FFElem: inverse of zero");
    if (in_prime_field()) {
        long p = f_->p();
        long t = 0, nt = 1, r = p, nr = c_[0];
        while (nr) {
            long q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return from_int(*f_, t < 0 ? t + p : t);
    }
    return pow(mpz_class(f_->order() - 2));
}

FFElem FFElem::operator/(const FFElem& o) const {
    check_same(o);
    return *this * o.inv();
}

bool FFElem::operator==(const FFElem& o) const {
    check_same(o);
    return c_ == o.c_;
}

std::string FFElem::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << static_cast<int>(c_[i]);
    }
    os << "]";
    return os.str();
}

FFElem frobenius(const FFElem& x, long m) {
    const FieldDesc& f = x.field();
    long d = f.degree();
    long mm = m % d;
    if (mm < 0) mm += d;
    FFElem r = x;
    for (long s = 0; s < mm; ++s) r = r.pow(f.p());
    return r;
}

// ---------------------------------------------------------------------------
// lattice

struct FieldLattice::SolveData {
    // Row-reduction operator R (L x L) and pivot rows for the embedding
    // matrix M (L x d): R*M has unit pivots at pivot_row[j] for column j.
    std::vector<std::vector<uint8_t>> R;
    std::vector<long> pivot_row;  // size d
};

namespace {

// root finding of an F_p-irreducible polynomial inside a member field where
// it splits completely; deterministic (splitting elements tried in index
// order).
using TPoly = std::vector<FFElem>;  // little-endian over the top field

void ttrim(TPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

TPoly tmod(TPoly a, const TPoly& f) {
    long df = static_cast<long>(f.size()) - 1;
    FFElem inv_lead = f[df].inv();
    ttrim(a);
    while (static_cast<long>(a.size()) - 1 >= df) {
        long da = static_cast<long>(a.size()) - 1;
        FFElem c = a[da] * inv_lead;
        for (long j = 0; j <= df; ++j) a[da - df + j] = a[da - df + j] - c * f[j];
        ttrim(a);
    }
    return a;
}

TPoly tmul(const TPoly& a, const TPoly& b, const FieldDesc& F) {
    if (a.empty() || b.empty()) return {};
    TPoly r(a.size() + b.size() - 1, FFElem::zero(F));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

TPoly tpowmod(TPoly base, mpz_class e, const TPoly& f, const FieldDesc& F) {
    TPoly acc{FFElem::one(F)};
    base = tmod(std::move(base), f);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = tmod(tmul(acc, base, F), f);
        base = tmod(tmul(base, base, F), f);
        e >>= 1;
    }
    return acc;
}

TPoly tgcd(TPoly a, TPoly b) {
    ttrim(a);
    ttrim(b);
    while (!b.empty()) {
        TPoly r = tmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        FFElem inv = a.back().inv();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

// Fixed bit-mixer giving a deterministic, well-spread sequence of splitting
// elements (sequential indices can hit huge trace-zero subspaces).
unsigned long mix64(unsigned long x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

FFElem find_root(TPoly f, const FieldDesc& F) {
    // f splits completely over F.
    ttrim(f);
    while (static_cast<long>(f.size()) - 1 > 1) {
        long df = static_cast<long>(f.size()) - 1;
        bool split = false;
        for (unsigned long di = 0; !split; ++di) {
            FFElem delta = FFElem::from_index(F, di < 4 ? di + 1 : mix64(di));
            if (delta.is_zero()) continue;
            TPoly g;
            if (F.p() == 2) {
                // trace polynomial sum (delta*y)^{2^i}
                TPoly acc(2, FFElem::zero(F));
                TPoly term{FFElem::zero(F), delta};
                for (long i = 0; i < F.degree(); ++i) {
                    acc.resize(std::max(acc.size(), term.size()), FFElem::zero(F));
                    for (size_t j = 0; j < term.size(); ++j) acc[j] = acc[j] + term[j];
                    term = tmod(tmul(term, term, F), f);
                }
                ttrim(acc);
                g = tgcd(f, acc);
            } else {
                mpz_class e = (F.order() - 1) / 2;
                TPoly ypd{delta, FFElem::one(F)};
                TPoly h = tpowmod(ypd, e, f, F);
                if (h.empty()) h = TPoly{FFElem::zero(F)};
                h[0] = h[0] - FFElem::one(F);
                ttrim(h);
                g = tgcd(f, h);
            }
            long dg = static_cast<long>(g.size()) - 1;
            if (dg > 0 && dg < df) {
                // keep the smaller factor
                if (dg <= df - dg) {
                    f = std::move(g);
                } else {
                    // f / g
                    TPoly q;
                    TPoly rem = f;
                    long dgg = static_cast<long>(g.size()) - 1;
                    q.assign(f.size() - g.size() + 1, FFElem::zero(F));
                    FFElem invl = g.back().inv();
                    while (static_cast<long>(rem.size()) - 1 >= dgg) {
                        long dr = static_cast<long>(rem.size()) - 1;
                        FFElem c = rem[dr] * invl;
                        q[dr - dgg] = c;
                        for (long j = 0; j <= dgg; ++j)
                            rem[dr - dgg + j] = rem[dr - dgg + j] - c * g[j];
                        ttrim(rem);
                    }
                    f = std::move(q);
                }
                split = true;
            }
            if (di > 1000000) throw Error("find_root: splitting failed");
        }
    }
    // f = y + c -> root -c/lead
    FFElem root = -(f[0] / f[1]);
    return root;
}

}  // namespace

FieldLattice::FieldLattice(long p, const std::vector<long>& degrees) : p_(p) {
    long L = 1;
    for (long d : degrees) L = std::lcm(L, d);
    top_degree_ = L;
    std::vector<long> degs = degrees;
    degs.push_back(1);
    degs.push_back(L);
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());

    // build top first
    for (long d : {L}) {
        auto fd = std::make_unique<FieldDesc>();
        fd->p_ = p;
        fd->d_ = d;
        fd->lat_ = this;
        fd->mod_ = least_irreducible(p, d);
        fd->red_.resize(d > 1 ? d - 1 : 0);
        {
            Poly cur(d, 0);
            for (long j = 0; j < d; ++j)
                cur[j] = static_cast<uint8_t>((p - fd->mod_[j]) % p);
            for (long k = 0; k + 1 < d; ++k) {
                fd->red_[k] = cur;
                Poly nxt(d, 0);
                long top = cur[d - 1];
                for (long j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
                nxt[0] = 0;
                if (top)
                    for (long j = 0; j < d; ++j)
                        nxt[j] = static_cast<uint8_t>(((nxt[j] - top * fd->mod_[j]) % p + p) % p);
                cur = std::move(nxt);
            }
        }
        fields_[d] = std::move(fd);
    }
    const FieldDesc& T = *fields_[L];

    for (long d : degs) {
        if (d == L) continue;
        auto fd = std::make_unique<FieldDesc>();
        fd->p_ = p;
        fd->d_ = d;
        fd->lat_ = this;
        fd->mod_ = least_irreducible(p, d);
        fd->red_.resize(d > 1 ? d - 1 : 0);
        {
            Poly cur(d, 0);
            for (long j = 0; j < d; ++j)
                cur[j] = static_cast<uint8_t>((p - fd->mod_[j]) % p);
            for (long k = 0; k + 1 < d; ++k) {
                fd->red_[k] = cur;
                Poly nxt(d, 0);
                long top = cur[d - 1];
                for (long j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
                nxt[0] = 0;
                if (top)
                    for (long j = 0; j < d; ++j)
                        nxt[j] = static_cast<uint8_t>(((nxt[j] - top * fd->mod_[j]) % p + p) % p);
                cur = std::move(nxt);
            }
        }
        fields_[d] = std::move(fd);
    }

    // canonical images in the top field: index-least root, then its powers
    for (auto& [d, fd] : fields_) {
        fd->top_cols_.assign(d, std::vector<uint8_t>(L, 0));
        if (d == L) {
            for (long j = 0; j < d; ++j) fd->top_cols_[j][j] = 1;
            continue;
        }
        FFElem root = FFElem::one(T);
        if (d == 1) {
            // modulus is x; embedding is by constants, root unused
            fd->top_cols_[0][0] = 1;
        } else {
            TPoly f;
            f.reserve(fd->mod_.size());
            for (uint8_t c : fd->mod_) f.push_back(FFElem::from_int(T, c));
            FFElem r0 = find_root(f, T);
            // index-least root among the Frobenius orbit
            FFElem best = r0;
            FFElem cur = r0;
            for (long j = 1; j < d; ++j) {
                cur = frobenius(cur, 1);
                if (cur.index() < best.index()) best = cur;
            }
            root = best;
            FFElem pw = FFElem::one(T);
            for (long j = 0; j < d; ++j) {
                fd->top_cols_[j] = pw.coeffs();
                pw = pw * root;
            }
        }
        if (d == 1) fd->top_cols_[0] = FFElem::one(T).coeffs();
    }

    // solvers
    for (auto& [d, fd] : fields_) {
        auto sd = std::make_unique<SolveData>();
        long rows = L, cols = d;
        std::vector<std::vector<uint8_t>> M(rows, std::vector<uint8_t>(cols, 0));
        for (long j = 0; j < cols; ++j)
            for (long i = 0; i < rows; ++i) M[i][j] = fd->top_cols_[j][i];
        sd->R.assign(rows, std::vector<uint8_t>(rows, 0));
        for (long i = 0; i < rows; ++i) sd->R[i][i] = 1;
        sd->pivot_row.assign(cols, -1);
        long r = 0;
        for (long c = 0; c < cols && r < rows; ++c) {
            long piv = -1;
            for (long i = r; i < rows; ++i)
                if (M[i][c]) { piv = i; break; }
            if (piv < 0) throw Error("FieldLattice: embedding matrix rank defect");
            std::swap(M[piv], M[r]);
            std::swap(sd->R[piv], sd->R[r]);
            long inv = mod_inv_long(M[r][c], p_);
            for (long j = 0; j < cols; ++j) M[r][j] = static_cast<uint8_t>((1L * M[r][j] * inv) % p_);
            for (long j = 0; j < rows; ++j)
                sd->R[r][j] = static_cast<uint8_t>((1L * sd->R[r][j] * inv) % p_);
            for (long i = 0; i < rows; ++i) {
                if (i == r || !M[i][c]) continue;
                long f2 = M[i][c];
                for (long j = 0; j < cols; ++j)
                    M[i][j] = static_cast<uint8_t>(((M[i][j] - f2 * M[r][j]) % p_ + p_) % p_);
                for (long j = 0; j < rows; ++j)
                    sd->R[i][j] = static_cast<uint8_t>(((sd->R[i][j] - f2 * sd->R[r][j]) % p_ + p_) % p_);
            }
            sd->pivot_row[c] = r;
            ++r;
        }
        solvers_[d] = std::move(sd);
    }
}

FieldLattice::~FieldLattice() = default;

bool FieldLattice::has_degree(long degree) const { return fields_.count(degree) > 0; }

const FieldDesc& FieldLattice::field(long degree) const {
    auto it = fields_.find(degree);
    if (it == fields_.end()) throw NotASubfield("FieldLattice: degree not in lattice");
    return *it->second;
}

std::vector<uint8_t> FieldLattice::to_top(const FFElem& x) const {
    const FieldDesc& f = x.field();
    std::vector<uint8_t> v(top_degree_, 0);
    for (long j = 0; j < f.degree(); ++j) {
        if (!x.coeffs()[j]) continue;
        long cj = x.coeffs()[j];
        const auto& col = f.top_cols_[j];
        for (long i = 0; i < top_degree_; ++i)
            v[i] = static_cast<uint8_t>((v[i] + cj * col[i]) % p_);
    }
    return v;
}

FFElem FieldLattice::from_top(const std::vector<uint8_t>& v, const FieldDesc& to) const {
    const auto& sd = *solvers_.at(to.degree());
    long L = top_degree_;
    std::vector<uint8_t> w(L, 0);
    for (long i = 0; i < L; ++i) {
        long acc = 0;
        for (long j = 0; j < L; ++j)
            if (sd.R[i][j] && v[j]) acc += 1L * sd.R[i][j] * v[j];
        w[i] = static_cast<uint8_t>(acc % p_);
    }
    std::vector<uint8_t> y(to.degree(), 0);
    for (long c = 0; c < to.degree(); ++c) y[c] = w[sd.pivot_row[c]];
    // consistency: rows without pivots must vanish
    std::vector<bool> is_pivot(L, false);
    for (long c = 0; c < to.degree(); ++c) is_pivot[sd.pivot_row[c]] = true;
    for (long i = 0; i < L; ++i)
        if (!is_pivot[i] && w[i])
            throw NotASubfield("FieldLattice: element does not lie in target subfield");
    return FFElem(to, std::move(y));
}

FFElem FieldLattice::convert(const FFElem& x, const FieldDesc& to) const {
    if (&x.field() == &to) return x;
    if (x.field().lat_ != this || to.lat_ != this)
        throw FieldMismatch("FieldLattice: fields from a different lattice");
    return from_top(to_top(x), to);
}

FFElem rel_trace(const FFElem& x, const FieldDesc& sub) {
    const FieldDesc& f = x.field();
    if (f.degree() % sub.degree() != 0)
        throw NotASubfield("rel_trace: sub degree does not divide field degree");
    long steps = f.degree() / sub.degree();
    FFElem acc = x;
    FFElem cur = x;
    for (long i = 1; i < steps; ++i) {
        cur = frobenius(cur, sub.degree());
        acc = acc + cur;
    }
    return f.lattice().convert(acc, sub);
}

FFElem rel_norm(const FFElem& x, const FieldDesc& sub) {
    const FieldDesc& f = x.field();
    if (f.degree() % sub.degree() != 0)
        throw NotASubfield("rel_norm: sub degree does not divide field degree");
    long steps = f.degree() / sub.degree();
    FFElem acc = x;
    FFElem cur = x;
    for (long i = 1; i < steps; ++i) {
        cur = frobenius(cur, sub.degree());
        acc = acc * cur;
    }
    return f.lattice().convert(acc, sub);
}

FFElem generator(const FieldDesc& f) {
    auto& cache = f.lattice().gen_cache_;
    auto it = cache.find(f.degree());
    if (it != cache.end()) return it->second;
    mpz_class q1 = f.order() - 1;
    std::vector<mpz_class> primes = factor_distinct_primes(q1);
    for (unsigned long idx = 1;; ++idx) {
        FFElem x = FFElem::from_index(f, idx);
        if (x.is_zero()) continue;
        bool ok = true;
        for (const auto& ell : primes) {
            if (x.pow(mpz_class(q1 / ell)) == FFElem::one(f)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            cache.emplace(f.degree(), x);
            return x;
        }
        if (idx > 5000000) throw Error("generator: search exhausted");
    }
}

mpz_class mult_order(const FFElem& x) {
    if (x.is_zero()) throw InvalidParams("mult_order: zero element");
    mpz_class q1 = x.field().order() - 1;
    mpz_class ord = q1;
    for (const auto& ell : factor_distinct_primes(q1)) {
        while (ord % ell == 0 && x.pow(mpz_class(ord / ell)) == FFElem::one(x.field()))
            ord /= ell;
    }
    return ord;
}

std::vector<FFElem> mu_roots(const FieldDesc& f, long m) {
    if (m < 1) throw InvalidParams("mu_roots: m must be positive");
    mpz_class q1 = f.order() - 1;
    mpz_class s;
    mpz_class mm(m);
    mpz_gcd(s.get_mpz_t(), mm.get_mpz_t(), q1.get_mpz_t());
    long sl = static_cast<long>(s.get_ui());
    FFElem g = generator(f);
    FFElem h = g.pow(mpz_class(q1 / s));
    std::vector<FFElem> roots;
    FFElem cur = FFElem::one(f);
    for (long k = 0; k < sl; ++k) {
        roots.push_back(cur);
        cur = cur * h;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<FFElem> additive_solve(const std::vector<FFElem>& coeff, const FFElem& rhs) {
    if (coeff.empty()) throw InvalidParams("additive_solve: empty coefficient list");
    const FieldDesc& f = rhs.field();
    long d = f.degree();
    long p = f.p();
    // matrix columns: L(e_j)
    std::vector<std::vector<uint8_t>> M(d, std::vector<uint8_t>(d, 0));
    for (long j = 0; j < d; ++j) {
        std::vector<uint8_t> e(d, 0);
        e[j] = 1;
        FFElem ej(f, std::move(e));
        FFElem acc = FFElem::zero(f);
        for (size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i].is_zero()) continue;
            acc = acc + coeff[i] * frobenius(ej, static_cast<long>(i));
        }
        for (long i = 0; i < d; ++i) M[i][j] = acc.coeffs()[i];
    }
    // solve M y = rhs over F_p, collecting the full solution set
    std::vector<std::vector<uint8_t>> A(M);
    std::vector<uint8_t> b(rhs.coeffs());
    std::vector<long> pivot_col_of_row;
    std::vector<long> col_pivot_row(d, -1);
    long r = 0;
    for (long c = 0; c < d && r < d; ++c) {
        long piv = -1;
        for (long i = r; i < d; ++i)
            if (A[i][c]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        long inv = mod_inv_long(A[r][c], p);
        for (long j = 0; j < d; ++j) A[r][j] = static_cast<uint8_t>((1L * A[r][j] * inv) % p);
        b[r] = static_cast<uint8_t>((1L * b[r] * inv) % p);
        for (long i = 0; i < d; ++i) {
            if (i == r || !A[i][c]) continue;
            long f2 = A[i][c];
            for (long j = 0; j < d; ++j)
                A[i][j] = static_cast<uint8_t>(((A[i][j] - f2 * A[r][j]) % p + p) % p);
            b[i] = static_cast<uint8_t>(((b[i] - f2 * b[r]) % p + p) % p);
        }
        col_pivot_row[c] = r;
        ++r;
    }
    for (long i = r; i < d; ++i)
        if (b[i]) return {};  // inconsistent: no solution in this field
    // particular solution
    std::vector<uint8_t> x0(d, 0);
    for (long c = 0; c < d; ++c)
        if (col_pivot_row[c] >= 0) x0[c] = b[col_pivot_row[c]];
    // nullspace basis
    std::vector<std::vector<uint8_t>> null_basis;
    for (long c = 0; c < d; ++c) {
        if (col_pivot_row[c] >= 0) continue;
        std::vector<uint8_t> v(d, 0);
        v[c] = 1;
        for (long c2 = 0; c2 < d; ++c2) {
            if (col_pivot_row[c2] < 0) continue;
            long val = A[col_pivot_row[c2]][c];
            v[c2] = static_cast<uint8_t>((p - val) % p);
        }
        null_basis.push_back(std::move(v));
    }
    size_t k = null_basis.size();
    double total = std::pow(static_cast<double>(p), static_cast<double>(k));
    if (total > 2e6) throw BudgetExceeded("additive_solve: solution set too large");
    std::vector<FFElem> out;
    std::vector<long> digits(k, 0);
    long count = static_cast<long>(total);
    for (long n = 0; n < count; ++n) {
        std::vector<uint8_t> v(x0);
        long t = n;
        for (size_t i = 0; i < k; ++i) {
            long di = t % p;
            t /= p;
            if (!di) continue;
            for (long j = 0; j < d; ++j)
                v[j] = static_cast<uint8_t>((v[j] + di * null_basis[i][j]) % p);
        }
        out.emplace_back(f, std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aslab::gf
