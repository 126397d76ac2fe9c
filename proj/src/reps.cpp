#include "aslab/reps.hpp"

#include <algorithm>
#include <set>

namespace aslab::reps {

using cyclo::Rat;
using gf::FFElem;
using gf::FieldDesc;

namespace {

long ipow(long b, long e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

CycNum psi0_of(const CycField& F, long p, const FFElem& x) {
    if (!x.in_prime_field()) throw CheckFailed("psi0: argument not in F_p");
    return cyclo::root_of_unity(F, (F.conductor() / p) * x.as_prime_int());
}

}  // namespace

// ---------------------------------------------------------------- CycMatrix

CycMatrix::CycMatrix(const CycField& F, long n) : n_(n), F_(&F) {
    a_.assign(n * n, CycNum::zero(F));
}

CycMatrix CycMatrix::identity(const CycField& F, long n) {
    CycMatrix m(F, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = CycNum::one(F);
    return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    CycMatrix r(*F_, n_);
    for (long i = 0; i < n_; ++i)
        for (long k = 0; k < n_; ++k) {
            const CycNum& x = at(i, k);
            if (x.is_zero()) continue;
            for (long j = 0; j < n_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        }
    return r;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
    CycMatrix r(*F_, n_);
    for (long i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CycMatrix CycMatrix::scaled(const CycNum& c) const {
    CycMatrix r(*F_, n_);
    for (long i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] * c;
    return r;
}

CycMatrix CycMatrix::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycMatrix acc = identity(*F_, n_);
    CycMatrix base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

CycNum CycMatrix::trace() const {
    CycNum t = CycNum::zero(*F_);
    for (long i = 0; i < n_; ++i) t = t + at(i, i);
    return t;
}

CycNum CycMatrix::det() const {
    CycMatrix m = *this;
    CycNum d = CycNum::one(*F_);
    for (long c = 0; c < n_; ++c) {
        long piv = -1;
        for (long r = c; r < n_; ++r)
            if (!m.at(r, c).is_zero()) { piv = r; break; }
        if (piv < 0) return CycNum::zero(*F_);
        if (piv != c) {
            for (long j = 0; j < n_; ++j) std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d = d * m.at(c, c);
        CycNum inv = m.at(c, c).inv();
        for (long r = c + 1; r < n_; ++r) {
            if (m.at(r, c).is_zero()) continue;
            CycNum f = m.at(r, c) * inv;
            for (long j = c; j < n_; ++j) m.at(r, j) = m.at(r, j) - f * m.at(c, j);
        }
    }
    return d;
}

CycMatrix CycMatrix::inverse() const {
    CycMatrix m = *this;
    CycMatrix inv = identity(*F_, n_);
    for (long c = 0; c < n_; ++c) {
        long piv = -1;
        for (long r = c; r < n_; ++r)
            if (!m.at(r, c).is_zero()) { piv = r; break; }
        if (piv < 0) throw DivisionByZero("CycMatrix: singular matrix");
        if (piv != c)
            for (long j = 0; j < n_; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        CycNum s = m.at(c, c).inv();
        for (long j = 0; j < n_; ++j) {
            m.at(c, j) = m.at(c, j) * s;
            inv.at(c, j) = inv.at(c, j) * s;
        }
        for (long r = 0; r < n_; ++r) {
            if (r == c || m.at(r, c).is_zero()) continue;
            CycNum f = m.at(r, c);
            for (long j = 0; j < n_; ++j) {
                m.at(r, j) = m.at(r, j) - f * m.at(c, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(c, j);
            }
        }
    }
    return inv;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
    if (n_ != o.n_) return false;
    for (long i = 0; i < n_ * n_; ++i)
        if (!(a_[i] == o.a_[i])) return false;
    return true;
}

bool CycMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

// ------------------------------------------------------------------ PhiChar

struct PhiChar::R0pp {
    // R_0'' data for p = 2: map from (b-bit, c-coset key) to power of the
    // designated generator D, with psi~_0(D) = -i.
    std::map<std::pair<int, unsigned long>, long> dlog;
    std::vector<FFElem> fprime;  // F' inside F_{2^e}, ambient images
    long e = 0;

    unsigned long coset_key(const FFElem& c) const {
        unsigned long best = c.index();
        for (const auto& fp : fprime) best = std::min(best, (c + fp).index());
        return best;
    }
};

PhiChar::PhiChar(const HeisContext& ctx, const CycField& F, long n) : ctx_(&ctx), F_(&F), n_(n) {
    long p = ctx.p();
    long pe = ipow(p, ctx.e());
    if (n % pe != 0 || (n / pe) % p == 0)
        throw InvalidParams("PhiChar: n must have p-part exactly p^e");
    if (F.conductor() % (p == 2 ? 8 : p) != 0)
        throw ConductorTooSmall("PhiChar: conductor too small for character values");

    if (p != 2) {
        long expo = n * ctx.e0() * ((p - 1) / 2);
        fr_value_ = CycNum::from_int(F, expo % 2 == 0 ? 1 : -1);
    } else {
        // (-1)^{n(n-2)/8} * (-sqrt2 + sqrt(-2))/2
        long sgn = ((n * (n - 2) / 8) % 2 == 0) ? 1 : -1;
        CycNum base = (-cyclo::sqrt2(F) + cyclo::sqrtm2(F)).scaled(Rat(1, 2));
        fr_value_ = base.scaled(Rat(sgn));

        // R_0'' bookkeeping
        r0pp_ = std::make_shared<R0pp>();
        r0pp_->e = ctx.e();
        const FieldDesc& amb = ctx.ambient();
        const FieldDesc& Fe = ctx.lattice().field(ctx.e());
        const FieldDesc& F2 = ctx.lattice().field(1);
        FFElem t = ctx.t_param();
        // F' = kernel of c -> Tr_{F_{2^e}/F_2}(t c) inside F_{2^e}
        for (unsigned long i = 0; i < (1ul << ctx.e()); ++i) {
            FFElem c = FFElem::from_index(Fe, i);
            FFElem tc = ctx.lattice().convert(ctx.lattice().convert(t, Fe) * c, Fe);
            if (gf::rel_trace(tc, F2).is_zero())
                r0pp_->fprime.push_back(ctx.lattice().convert(c, amb));
        }
        if (r0pp_->fprime.size() != (1ul << ctx.e()) / 2)
            throw CheckFailed("PhiChar: F' does not have index 2 (is t = 0?)");

        // enumerate R_0' = {(b, c): b in F_2, c^{2^e} - c = b} and quotient
        // by F'.  The quotient must be cyclic of order 4.
        std::vector<std::pair<int, FFElem>> r0p;
        for (int b = 0; b <= 1; ++b) {
            std::vector<FFElem> L(ctx.e() + 1, FFElem::zero(amb));
            L[0] = FFElem::from_int(amb, -1);
            L[ctx.e()] = FFElem::one(amb);
            auto cs = gf::additive_solve(L, FFElem::from_int(amb, b));
            if (static_cast<long>(cs.size()) != (1L << ctx.e()))
                throw FieldTooSmall("PhiChar: R_0' c-solutions missing");
            for (const auto& c : cs) r0p.push_back({b, c});
        }
        // group law on R_0': (b1,c1)(b2,c2) = (b1+b2, c1+c2+b1 b2)
        auto mul_r0p = [&](std::pair<int, FFElem> x, std::pair<int, FFElem> y) {
            FFElem c = x.second + y.second;
            if (x.first && y.first) c = c + FFElem::one(amb);
            return std::pair<int, FFElem>{(x.first + y.first) % 2, c};
        };
        // cosets
        std::set<std::pair<int, unsigned long>> cosets;
        for (const auto& g : r0p) cosets.insert({g.first, r0pp_->coset_key(g.second)});
        if (cosets.size() != 4) throw CheckFailed("PhiChar: |R_0''| != 4");
        // designated generator D = (1, s^2 + sum_{0<=i<j<=e-1} t^{2^i+2^j})
        FFElem s = ctx.s_param();
        FFElem dc = s * s;
        for (long i = 0; i < ctx.e(); ++i)
            for (long j = i + 1; j <= ctx.e() - 1; ++j)
                dc = dc + gf::frobenius(t, i) * gf::frobenius(t, j);
        std::pair<int, FFElem> D{1, dc};
        // membership sanity: D must satisfy c^{2^e} - c = b
        if (!(gf::frobenius(D.second, ctx.e()) - D.second == FFElem::from_int(amb, D.first)))
            throw CheckFailed("PhiChar: designated element not in R_0'");
        // dlog table: D^k for k = 0..3
        std::pair<int, FFElem> cur{0, FFElem::zero(amb)};
        for (long k = 0; k < 4; ++k) {
            r0pp_->dlog[{cur.first, r0pp_->coset_key(cur.second)}] = k;
            cur = mul_r0p(cur, D);
        }
        if (!(cur.first == 0 && r0pp_->coset_key(cur.second) ==
                                    r0pp_->coset_key(FFElem::zero(amb))))
            throw CheckFailed("PhiChar: designated element does not have order 4");
        if (r0pp_->dlog.size() != 4) throw CheckFailed("PhiChar: R_0'' is not cyclic of order 4");
    }
    verify();
}

CycNum PhiChar::on_r0(const QElt& q) const {
    const HeisContext& ctx = *ctx_;
    long p = ctx.p();
    if (!(q.a == FFElem::one(ctx.ambient())))
        throw NotASubgroup("phi_n: element not in R_0 (a != 1)");
    if (!(gf::frobenius(q.b, ctx.e()) - ctx.r() * q.b).is_zero())
        throw NotASubgroup("phi_n: element not in R_0 (b-condition)");
    if (p != 2) {
        // psi_0(c - (1/2) sum_{i<e} (r b^2)^{p^i})
        FFElem half = FFElem::from_int(ctx.ambient(), 2).inv();
        FFElem rb2 = ctx.r() * q.b * q.b;
        FFElem w = q.c;
        for (long i = 0; i < ctx.e(); ++i) w = w - half * gf::frobenius(rb2, i);
        return psi0_of(*F_, p, w);
    }
    // p = 2: psi~_0 of phi'(g(1,b,c))
    const FieldDesc& amb = ctx.ambient();
    const FieldDesc& Fp2 = ctx.lattice().field(1);
    const FieldDesc& Fe = ctx.lattice().field(ctx.e());
    FFElem b_sub = ctx.lattice().convert(q.b, Fe);
    int bbit = gf::rel_trace(b_sub, Fp2).as_prime_int() ? 1 : 0;
    FFElem cc = q.c;
    for (long i = 0; i < ctx.e(); ++i)
        for (long j = i + 1; j <= ctx.e() - 1; ++j)
            cc = cc + gf::frobenius(q.b, i) * gf::frobenius(q.b, j);
    auto it = r0pp_->dlog.find({bbit, r0pp_->coset_key(cc)});
    if (it == r0pp_->dlog.end()) throw CheckFailed("phi_n: image not in R_0'' table");
    long k = it->second;
    // The faithful character of R_0'' is pinned on the designated generator D.
    // With the group conventions fixed by the inverse-of-bom-g identity and
    // the calibrated fixed-point traces, the branch psi~_0(D) = +sqrt(-1) is
    // the one for which Ind_R^{Q'} phi_n matches the twisted geometric
    // character pointwise; the opposite branch fails at bom-g^{-1} by a
    // quarter turn.
    CycNum mi = cyclo::sqrt_minus1(*F_);
    return mi.pow(k);
}

CycNum PhiChar::operator()(const GrpElt& g) const {
    const HeisContext& ctx = *ctx_;
    if (!ctx.contains(SubgroupTag::R, g)) throw NotASubgroup("phi_n: element not in R");
    if (ctx.p() != 2) {
        long long k = g.m / (2 * ctx.e0());
        GrpElt q0 = ctx.mul(g, ctx.fr(-g.m));
        CycNum base = on_r0(q0.q);
        CycNum frv = fr_value_.pow(static_cast<long>(k % 2 == 0 ? 0 : 1));
        // fr_value is +-1 so integer powers reduce mod 2
        if (k % 2 != 0) return base * fr_value_;
        return base;
    }
    GrpElt r0 = ctx.mul(g, ctx.power(ctx.bom_g(), g.m));
    if (r0.m != 0) throw Error("phi_n: internal decomposition failure");
    // g = r0 * bom-g^{-m}
    CycNum v = on_r0(r0.q) * fr_value_.pow(-g.m);
    return v;
}

CycNum PhiChar::fr_generator_value() const { return fr_value_; }

void PhiChar::verify() {
    const HeisContext& ctx = *ctx_;
    const auto& R0 = ctx.enumerate(SubgroupTag::R0);
    // extends psi_0 on F
    for (const auto& z : ctx.enumerate(SubgroupTag::F)) {
        CycNum lhs = on_r0(z.q);
        CycNum rhs = psi0_of(*F_, ctx.p(), z.q.c);
        if (!(lhs == rhs))
            throw NotAHomomorphism("phi_n does not extend psi_0 at " + z.str());
    }
    // homomorphism on R_0 x R_0 (exhaustive)
    for (const auto& x : R0)
        for (const auto& y : R0) {
            GrpElt xy = ctx.mul(x, y);
            if (!(on_r0(xy.q) == on_r0(x.q) * on_r0(y.q)))
                throw NotAHomomorphism("phi_n not multiplicative at " + x.str() + ", " + y.str());
        }
    // invariance under the generator that extends R_0 to R
    GrpElt gen = (ctx.p() != 2) ? ctx.fr(2 * ctx.e0()) : ctx.bom_g();
    for (const auto& x : R0) {
        GrpElt cx = ctx.conj(x, gen);
        if (!ctx.contains(SubgroupTag::R0, cx))
            throw NotAHomomorphism("phi_n: conjugation leaves R_0");
        if (!(on_r0(cx.q) == on_r0(x.q)))
            throw NotAHomomorphism("phi_n|R_0 not invariant under the R-generator at " + x.str());
    }
    // spot-check the full homomorphism property across the Z-direction
    for (const auto& x : R0) {
        GrpElt gx = ctx.mul(gen, x);
        if (!((*this)(gx) == (*this)(gen) * on_r0(x.q)))
            throw NotAHomomorphism("phi_n not multiplicative across Fr direction");
    }
}

PhiChar build_phi_n(const HeisContext& ctx, const CycField& F, long n) {
    return PhiChar(ctx, F, n);
}

// --------------------------------------------------------------- induction

ClassFunction induce_character(const HeisContext& ctx, const CycField& F,
                               std::function<bool(const GrpElt&)> member,
                               std::function<CycNum(const GrpElt&)> chi,
                               const std::vector<GrpElt>& coset_reps) {
    ClassFunction out;
    out.eval = [&ctx, &F, member, chi, coset_reps](const GrpElt& g) {
        CycNum acc = CycNum::zero(F);
        for (const auto& x : coset_reps) {
            GrpElt h = ctx.mul(ctx.mul(ctx.inv(x), g), x);
            if (member(h)) acc = acc + chi(h);
        }
        return acc;
    };
    return out;
}

ClassFunction induce_character(const HeisContext& ctx, const CycField& F, const PhiChar& phi,
                               SubgroupTag from, SubgroupTag to) {
    if (!((from == SubgroupTag::R && to == SubgroupTag::Qprime) ||
          (from == SubgroupTag::R0 && to == SubgroupTag::Q0)))
        throw NotASubgroup("induce_character: supported steps are R->Q' and R_0->Q_0");
    auto reps = ctx.coset_reps_Q0_mod_R0();
    const PhiChar* ph = &phi;
    auto member = [&ctx, from](const GrpElt& g) { return ctx.contains(from, g); };
    auto chi = [ph, from](const GrpElt& g) {
        if (from == SubgroupTag::R0) return ph->on_r0(g.q);
        return (*ph)(g);
    };
    return induce_character(ctx, F, member, chi, reps);
}

// --------------------------------------------------------- HeisenbergModel

CycMatrix HeisenbergModel::rho0(const QElt& q) const {
    auto key = std::make_pair(q.b.index(), q.c.index());
    auto it = rho0_cache_.find(key);
    if (it != rho0_cache_.end()) return it->second;
    const HeisContext& ctx = *ctx_;
    CycMatrix m(*F_, dim_);
    GrpElt gq{q, 0};
    for (long i = 0; i < dim_; ++i) {
        for (long j = 0; j < dim_; ++j) {
            GrpElt h = ctx.mul(ctx.mul(ctx.inv(reps_[i]), gq), reps_[j]);
            if (ctx.contains(SubgroupTag::R0, h)) m.at(i, j) = phi_->on_r0(h.q);
        }
    }
    rho0_cache_.emplace(key, m);
    return m;
}

long HeisenbergModel::mu_log(const FFElem& a) const {
    FFElem cur = FFElem::one(ctx_->ambient());
    for (long s = 0; s < mu_order_; ++s) {
        if (cur == a) return s;
        cur = cur * a0_;
    }
    throw CheckFailed("mu_log: element not in mu_{p^e+1}");
}

HeisenbergModel::HeisenbergModel(const HeisContext& ctx, const CycField& F,
                                 const traceo::Convention& conv)
    : ctx_(&ctx), F_(&F) {
    long p = ctx.p();
    dim_ = ipow(p, ctx.e());
    mu_order_ = dim_ + 1;
    reps_ = ctx.coset_reps_Q0_mod_R0();
    if (static_cast<long>(reps_.size()) != dim_)
        throw CheckFailed("HeisenbergModel: [Q_0:R_0] != p^e");
    phi_ = std::make_unique<PhiChar>(ctx, F, dim_);  // n = p^e
    a0_ = ctx.mu_generator();

    // intertwiner W between rho0 and rho0 o conj_{a0} by Schur averaging
    const auto& Q0 = ctx.enumerate(SubgroupTag::Q0);
    GrpElt ga0{ctx.q_make(a0_, FFElem::zero(ctx.ambient()), FFElem::zero(ctx.ambient())), 0};
    CycMatrix W(F, dim_);
    for (long ei = 0; ei < dim_ * dim_ && W.is_zero(); ++ei) {
        CycMatrix E(F, dim_);
        E.at(ei / dim_, ei % dim_) = CycNum::one(F);
        CycMatrix acc(F, dim_);
        for (const auto& g : Q0) {
            QElt cg = ctx.conj(g, ga0).q;
            acc = acc + rho0(cg) * E * rho0(ctx.q_inv(g.q));
        }
        W = acc;
    }
    if (W.is_zero()) throw NoCandidate("HeisenbergModel: intertwiner space trivial");
    // intertwining property
    for (const auto& g : Q0) {
        QElt cg = ctx.conj(g, ga0).q;
        if (!(W * rho0(g.q) == rho0(cg) * W))
            throw CheckFailed("HeisenbergModel: intertwiner identity fails");
    }
    // normalize by the trace condition tr = -1, then sieve candidates
    CycNum trW = W.trace();
    if (trW.is_zero())
        throw NoCandidate("HeisenbergModel: intertwiner trace vanishes; no trace -1 extension");
    CycMatrix base = W.scaled((-CycNum::one(F)) / trW);
    // base^{mu_order} must be the identity for a valid extension of order
    // mu_order; candidates differ by mu-th roots of unity
    long N = F.conductor();
    if (N % mu_order_ != 0)
        throw ConductorTooSmall("HeisenbergModel: conductor lacks mu_{p^e+1} values");
    candidate_count_ = 0;
    for (long j = 0; j < mu_order_; ++j) {
        CycMatrix cand = base.scaled(cyclo::root_of_unity(F, (N / mu_order_) * j));
        if (!(cand.pow(mu_order_) == CycMatrix::identity(F, dim_))) continue;
        bool ok = true;
        CycMatrix pw = cand;
        for (long k = 1; k < mu_order_; ++k) {
            if (!(pw.trace() == CycNum::from_int(F, -1))) {
                ok = false;
                break;
            }
            pw = pw * cand;
        }
        if (ok) {
            ++candidate_count_;
            if (selected_ < 0) {
                selected_ = j;
                A_ = cand;
            }
        }
    }
    if (candidate_count_ == 0)
        throw NoCandidate("HeisenbergModel: no extension satisfies the trace -1 condition");
    if (candidate_count_ > 1)
        throw MultipleCandidates("HeisenbergModel: trace condition does not pin the extension");

    // Frobenius intertwiner: Phi rho(q) Phi^{-1} = rho(act(1, q))
    const auto& Q = ctx.enumerate(SubgroupTag::Qfull);
    CycMatrix W1(F, dim_);
    for (long ei = 0; ei < dim_ * dim_ && W1.is_zero(); ++ei) {
        CycMatrix E(F, dim_);
        E.at(ei / dim_, ei % dim_) = CycNum::one(F);
        CycMatrix acc(F, dim_);
        for (const auto& g : Q) acc = acc + rho(ctx.act(1, g.q)) * E * rho(ctx.q_inv(g.q));
        W1 = acc;
    }
    if (W1.is_zero()) throw NoCandidate("HeisenbergModel: Frobenius intertwiner trivial");
    for (const auto& g : Q) {
        if (!(W1 * rho(g.q) == rho(ctx.act(1, g.q)) * W1))
            throw CheckFailed("HeisenbergModel: Frobenius intertwiner identity fails");
    }
    // normalize against one geometric trace: pick q* with nonzero trace
    bool normalized = false;
    for (const auto& g : Q) {
        GrpElt g1{g.q, 1};
        CycNum target;
        try {
            target = traceo::geometric_trace(ctx, F, g1, conv);
        } catch (const AmbientTooSmall&) {
            continue;
        }
        CycNum denom = (rho(g.q) * W1).trace();
        if (denom.is_zero()) continue;
        if (target.is_zero()) continue;
        Phi_ = W1.scaled(target / denom);
        normalized = true;
        break;
    }
    if (!normalized)
        throw CheckFailed("HeisenbergModel: could not normalize the Frobenius intertwiner");
    detPhi_ = Phi_.det();
}

CycMatrix HeisenbergModel::rho(const QElt& q) const {
    long s = mu_log(q.a);
    QElt q0{FFElem::one(ctx_->ambient()), q.a.inv() * q.b, q.c};
    return A_.pow(s) * rho0(q0);
}

const CycMatrix& HeisenbergModel::phi_power(long long m) const {
    auto it = phi_pow_cache_.find(m);
    if (it != phi_pow_cache_.end()) return it->second;
    CycMatrix pw = Phi_.pow(static_cast<long>(m));
    auto [pos, _] = phi_pow_cache_.emplace(m, std::move(pw));
    return pos->second;
}

CycMatrix HeisenbergModel::full(const GrpElt& g) const {
    return rho(g.q) * phi_power(g.m);
}

CycNum HeisenbergModel::tau0_char(const QElt& q) const { return rho(q).trace(); }

CycNum HeisenbergModel::tau_psi0_char(const GrpElt& g) const {
    // trace of rho(q) Phi^m without forming the product densely
    const CycMatrix& a = rho(g.q);
    const CycMatrix& b = phi_power(g.m);
    CycNum acc = CycNum::zero(*F_);
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j) {
            if (a.at(i, j).is_zero() || b.at(j, i).is_zero()) continue;
            acc = acc + a.at(i, j) * b.at(j, i);
        }
    return acc;
}

CycNum HeisenbergModel::det_tau0(const QElt& q) const { return rho(q).det(); }

CycNum HeisenbergModel::det_full(const GrpElt& g) const {
    return rho(g.q).det() * detPhi_.pow(g.m);
}

CycNum HeisenbergModel::chi0(const FFElem& a) const {
    if (ctx_->p() == 2) return CycNum::one(*F_);
    FFElem t = a.pow((ipow(ctx_->p(), ctx_->e()) + 1) / 2);
    if (t == FFElem::one(ctx_->ambient())) return CycNum::one(*F_);
    if (t == FFElem::from_int(ctx_->ambient(), -1)) return CycNum::from_int(*F_, -1);
    throw CheckFailed("chi0: a^{(p^e+1)/2} not in mu_2");
}

CycNum HeisenbergModel::twist(const GrpElt& g, long n, long nprime) const {
    long p = ctx_->p();
    const CycField& F = *F_;
    if (p != 2) {
        // chi_0(a)^n * { (sqrt(-1)^{(p+3)/2} (-2n'/p))^n p^{-1/2} }^m
        CycNum unit = cyclo::sqrt_minus1(F).pow((p + 3) / 2).scaled(
            Rat(traceo::jacobi(-2 * nprime, p)));
        CycNum per_m = unit.pow(n) * cyclo::pow_p_half(F, p, -1);
        CycNum res = chi0(g.q.a).pow(n);
        return res * per_m.pow(static_cast<long>(g.m));
    }
    long sgn = ((n * (n - 2) / 8) % 2 == 0) ? 1 : -1;
    CycNum per_m = cyclo::pow_p_half(F, 2, -1).scaled(Rat(sgn));
    return per_m.pow(static_cast<long>(g.m));
}

CycNum HeisenbergModel::tau_n_char(const GrpElt& g, long n, long nprime) const {
    return tau_psi0_char(g) * twist(g, n, nprime);
}

ClassFunction HeisenbergModel::tau_n(long n, long nprime) const {
    const HeisenbergModel* self = this;
    ClassFunction out;
    out.eval = [self, n, nprime](const GrpElt& g) { return self->tau_n_char(g, n, nprime); };
    return out;
}

cyclo::Rat HeisenbergModel::tau0_self_inner_product() const {
    const auto& Q = ctx_->enumerate(SubgroupTag::Qfull);
    CycNum acc = CycNum::zero(*F_);
    for (const auto& g : Q) {
        CycNum v = tau0_char(g.q);
        acc = acc + v * v.conj();
    }
    CycNum ip = acc.scaled(Rat(1, static_cast<long>(Q.size())));
    if (!ip.is_rational()) throw CheckFailed("tau0 inner product is not rational");
    return ip.rational_part();
}

CycNum HeisenbergModel::mu_multiplicity(long chi_index) const {
    long N = F_->conductor();
    if (N % mu_order_ != 0) throw ConductorTooSmall("mu_multiplicity: conductor");
    CycNum acc = CycNum::zero(*F_);
    FFElem cur = FFElem::one(ctx_->ambient());
    for (long k = 0; k < mu_order_; ++k) {
        QElt q{cur, FFElem::zero(ctx_->ambient()), FFElem::zero(ctx_->ambient())};
        CycNum chi_bar = cyclo::root_of_unity(*F_, -(N / mu_order_) * chi_index * k);
        acc = acc + tau0_char(q) * chi_bar;
        cur = cur * a0_;
    }
    return acc.scaled(Rat(1, mu_order_));
}

}  // namespace aslab::reps
