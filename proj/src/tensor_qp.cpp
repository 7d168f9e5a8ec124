#include "qpmod/tensor_qp.hpp"

namespace qpmod {

// --- TensorVec -------------------------------------------------------------

TensorVec TensorVec::basis(Signature sig, const Monomial& mono, int index, const Scalar& c) {
    TensorVec w(sig);
    w.add_term({mono, index}, c);
    return w;
}

TensorVec TensorVec::pure(const SuperPoly& p, int index) {
    TensorVec w(p.sig());
    for (const auto& [mono, c] : p.terms()) w.add_term({mono, index}, c);
    return w;
}

void TensorVec::add_term(const TensorKey& key, const Scalar& c) {
    check_monomial(sig_, key.mono);
    if (key.index < 0) throw AlgebraError("negative Omega index");
    terms_.add(key, c);
}

TensorVec& TensorVec::operator+=(const TensorVec& o) {
    require_same(sig_, o.sig_, "tensor add");
    terms_.add_all(o.terms_);
    return *this;
}

TensorVec& TensorVec::operator-=(const TensorVec& o) {
    require_same(sig_, o.sig_, "tensor sub");
    terms_.add_all(o.terms_, Scalar(-1));
    return *this;
}

TensorVec& TensorVec::operator*=(const Scalar& c) {
    terms_.scale(c);
    return *this;
}

TensorVec TensorVec::with_sig(Signature sig) const {
    TensorVec out(sig);
    for (const auto& [key, c] : terms_) out.add_term(key, c);
    return out;
}

void check_mu(int m, int n, const MuVector& mu) {
    if (int(mu.size()) != m + n + 1)
        throw AlgebraError("mu must have m+n+1 = " + std::to_string(m + n + 1) + " entries");
    for (int k = 1; k <= n; ++k)
        if (!mu[std::size_t(m + k)].is_zero())
            throw AlgebraError("mu(" + std::to_string(m + k) + ") must be 0");
}

// --- shared kernels --------------------------------------------------------

namespace {

// Sparse columns of every E_{a,b}: cols[(a*N+b)*dim + v] = {(row, value)}.
struct SparseAction {
    int N = 0;
    int dim = 0;
    std::vector<std::vector<std::pair<int, Scalar>>> cols;

    explicit SparseAction(const GlModule& omega) : N(omega.size()), dim(omega.dim()) {
        cols.resize(std::size_t(N * N * dim));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int v = 0; v < dim; ++v)
                    for (int r = 0; r < dim; ++r) {
                        const Scalar& e = omega.act(a, b).at(r, v);
                        if (!e.is_zero()) cols[std::size_t((a * N + b) * dim + v)].push_back({r, e});
                    }
    }
    const std::vector<std::pair<int, Scalar>>& col(int a, int b, int v) const {
        return cols[std::size_t((a * N + b) * dim + v)];
    }
};

Deriv deriv_for(const Signature& sig, int alpha) {
    if (alpha > sig.m) return {DerivKind::Odd, alpha - sig.m};
    return {DerivKind::Euler, alpha};
}

void check_index(const GlModule& omega, const TensorVec& w) {
    for (const auto& [key, c] : w.terms())
        if (key.index >= omega.dim()) throw AlgebraError("Omega index out of range");
}

// The Shen-Larsson derivation formula for a single coefficient monomial a with
// coefficient ca. With full = true, d_0 is a genuine derivation (V_A); with
// full = false, d_0 means the formal unit: d_0(b) := 0 and the sum starts at 1.
void shen_kernel(const Monomial& a, const Scalar& ca, int alpha, const TensorVec& w, const SparseAction& act,
                 const MuVector& mu, bool full, TensorVec& out) {
    const Signature& sig = w.sig();
    int m = sig.m;
    int pa_alpha = sig.alpha_parity(alpha);
    const Scalar& mu_alpha = mu[std::size_t(alpha)];
    // derivatives of a, computed once
    struct DA {
        int beta;
        Monomial mono;
        Scalar coeff;
    };
    std::vector<DA> das;
    for (int beta = full ? 0 : 1; beta <= m + sig.n; ++beta) {
        if (beta <= m && !sig.has_even(beta)) continue;
        auto d = derive_monomial(deriv_for(sig, beta), a);
        if (d) das.push_back({beta, d->mono, d->coeff});
    }
    bool derive_b = full || alpha != 0;
    Deriv dalpha = deriv_for(sig, alpha);
    for (const auto& [key, cw] : w.terms()) {
        const Monomial& b = key.mono;
        Scalar base = ca * cw;
        // a (d_alpha(b) + mu(alpha) b) (x) v
        if (derive_b) {
            if (auto db = derive_monomial(dalpha, b)) {
                if (auto prod = multiply(a, db->mono)) {
                    Scalar c = base * db->coeff;
                    out.add_term({prod->mono, key.index}, prod->sign < 0 ? -c : c);
                }
            }
        }
        if (!mu_alpha.is_zero()) {
            if (auto prod = multiply(a, b)) {
                Scalar c = base * mu_alpha;
                out.add_term({prod->mono, key.index}, prod->sign < 0 ? -c : c);
            }
        }
        // sum_beta (-1)^{|ab||d_beta| + |d_beta| + |b||d_alpha|} d_beta(a) b (x) E_{beta,alpha} v
        int pb = b.parity();
        int pab = (a.parity() + pb) & 1;
        for (const auto& da : das) {
            const auto& col = act.col(da.beta, alpha, key.index);
            if (col.empty()) continue;
            auto prod = multiply(da.mono, b);
            if (!prod) continue;
            int pbeta = sig.alpha_parity(da.beta);
            int e = pab * pbeta + pbeta + pb * pa_alpha;
            Scalar c = base * da.coeff;
            if ((e & 1) != (prod->sign < 0 ? 1 : 0)) c = -c;
            for (const auto& [row, val] : col) out.add_term({prod->mono, row}, c * val);
        }
    }
}

void mult_kernel(const Monomial& a, const Scalar& ca, const TensorVec& w, TensorVec& out) {
    for (const auto& [key, cw] : w.terms()) {
        auto prod = multiply(a, key.mono);
        if (!prod) continue;
        Scalar c = ca * cw;
        out.add_term({prod->mono, key.index}, prod->sign < 0 ? -c : c);
    }
}

// -(-1)^{|b||d_alpha|} a b (x) E_{0,alpha} v
void phihat_kernel(const Monomial& a, const Scalar& ca, int alpha, const TensorVec& w, const SparseAction& act,
                   TensorVec& out) {
    int pa_alpha = w.sig().alpha_parity(alpha);
    for (const auto& [key, cw] : w.terms()) {
        const auto& col = act.col(0, alpha, key.index);
        if (col.empty()) continue;
        auto prod = multiply(a, key.mono);
        if (!prod) continue;
        int e = 1 + key.mono.parity() * pa_alpha;
        Scalar c = ca * cw;
        if ((e & 1) != (prod->sign < 0 ? 1 : 0)) c = -c;
        for (const auto& [row, val] : col) out.add_term({prod->mono, row}, c * val);
    }
}

}  // namespace

TensorVec shen_act(const SuperPoly& f, int alpha, const TensorVec& w, const GlModule& omega, const MuVector& mu) {
    require_same(f.sig(), w.sig(), "shen_act");
    if (!w.sig().with_t0) throw AlgebraError("shen_act needs the full signature");
    if (alpha < 0 || alpha > w.sig().m + w.sig().n) throw AlgebraError("direction index out of range");
    if (omega.m() != w.sig().m || omega.n() != w.sig().n) throw AlgebraError("Omega does not match signature");
    check_mu(omega.m(), omega.n(), mu);
    check_index(omega, w);
    SparseAction act(omega);
    TensorVec out(w.sig());
    for (const auto& [mono, c] : f.terms()) shen_kernel(mono, c, alpha, w, act, mu, true, out);
    return out;
}

TensorVec shen_mult(const SuperPoly& f, const TensorVec& w) {
    require_same(f.sig(), w.sig(), "shen_mult");
    TensorVec out(w.sig());
    for (const auto& [mono, c] : f.terms()) mult_kernel(mono, c, w, out);
    return out;
}

QPElement times_tag(const SuperPoly& a, int alpha) {
    if (alpha == 0) return QPElement::poly(a);
    return QPElement::field(VectorField::make(a, alpha));
}

QPElement tag_element(Signature dotted, int alpha) { return times_tag(SuperPoly::one(dotted), alpha); }

// --- QPStructure -----------------------------------------------------------

QPStructure QPStructure::shen_larsson(GlModule omega, MuVector mu) {
    check_mu(omega.m(), omega.n(), mu);
    QPStructure S;
    S.sig_ = Signature::dotted(omega.m(), omega.n());
    S.omega_ = std::make_shared<const GlModule>(std::move(omega));
    S.mu_ = std::move(mu);
    auto act = std::make_shared<const SparseAction>(*S.omega_);
    Signature sig = S.sig_;
    MuVector mu_copy = S.mu_;
    auto omega_ptr = S.omega_;
    S.psi_ = [act, mu_copy, sig, omega_ptr](const QPElement& x, const TensorVec& w) {
        require_same(sig, x.sig(), "psi");
        require_same(sig, w.sig(), "psi");
        check_index(*omega_ptr, w);
        TensorVec out(sig);
        for (const auto& [mono, c] : x.a.terms()) shen_kernel(mono, c, 0, w, *act, mu_copy, false, out);
        for (const auto& [key, c] : x.x.terms()) shen_kernel(key.mono, c, key.alpha, w, *act, mu_copy, false, out);
        return out;
    };
    S.phihat_ = [act, sig, omega_ptr](const QPElement& x, const TensorVec& w) {
        require_same(sig, x.sig(), "phihat");
        require_same(sig, w.sig(), "phihat");
        check_index(*omega_ptr, w);
        TensorVec out(sig);
        for (const auto& [mono, c] : x.a.terms()) phihat_kernel(mono, c, 0, w, *act, out);
        for (const auto& [key, c] : x.x.terms()) phihat_kernel(key.mono, c, key.alpha, w, *act, out);
        return out;
    };
    return S;
}

QPStructure QPStructure::with_phihat(OpFn phihat) const {
    QPStructure S = *this;
    S.phihat_ = std::move(phihat);
    return S;
}

TensorVec QPStructure::phi(const SuperPoly& a, const TensorVec& w) const {
    require_same(sig_, a.sig(), "phi");
    require_same(sig_, w.sig(), "phi");
    TensorVec out(sig_);
    for (const auto& [mono, c] : a.terms()) mult_kernel(mono, c, w, out);
    return out;
}

int QPStructure::term_parity(const TensorKey& key) const {
    return (key.mono.parity() + omega_->parity(key.index)) & 1;
}

std::optional<int> QPStructure::parity(const TensorVec& w) const {
    std::optional<int> p;
    for (const auto& [key, c] : w.terms()) {
        int q = term_parity(key);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p;
}

TensorVec qp_apply(QPKind kind, const QPElement& x, const TensorVec& w, const QPStructure& S) {
    switch (kind) {
    case QPKind::Phi:
        if (!x.x.is_zero()) throw AlgebraError("phi takes an element of A_dot");
        return S.phi(x.a, w);
    case QPKind::Psi:
        return S.psi(x, w);
    case QPKind::PhiHat:
        return S.phihat(x, w);
    }
    return S.zero();
}

// --- axioms ----------------------------------------------------------------

namespace {

int par_of(const QPElement& x) {
    if (x.is_zero()) return 0;
    auto p = x.parity();
    if (!p) throw AlgebraError("axiom check needs homogeneous elements");
    return *p;
}

int par_of(const SuperPoly& a) {
    if (a.is_zero()) return 0;
    auto p = a.parity();
    if (!p) throw AlgebraError("axiom check needs homogeneous elements");
    return *p;
}

Scalar ksign(int p, int q) { return (p & q) ? Scalar(-1) : Scalar(1); }

}  // namespace

TensorVec qp_axiom_defect(int which, const AxiomCase& c, const QPStructure& S) {
    const TensorVec& w = c.w;
    switch (which) {
    case 1: {
        TensorVec unit = S.phi(SuperPoly::one(S.sig()), w) - w;
        if (!unit.is_zero()) return unit;
        return S.phi(c.a * c.b, w) - S.phi(c.a, S.phi(c.b, w));
    }
    case 2: {
        Scalar s = ksign(par_of(c.x), par_of(c.y));
        TensorVec rhs = S.psi(c.x, S.psi(c.y, w)) - S.psi(c.y, S.psi(c.x, w)) * s;
        return S.psi(qp_bracket(c.x, c.y), w) - rhs;
    }
    case 3: {
        Scalar s = ksign(par_of(c.x), par_of(c.y));
        TensorVec lhs = S.phihat(c.x, S.phihat(c.y, w)) - S.phihat(c.y, S.phihat(c.x, w)) * s;
        TensorVec rhs = S.phihat(qp_product(c.x, QPElement::poly(pi(c.y))), w) -
                        S.phihat(qp_product(QPElement::poly(pi(c.x)), c.y), w);
        return lhs - rhs;
    }
    case 4:
        return S.phihat(qp_product(QPElement::poly(c.a), c.x), w) - S.phi(c.a, S.phihat(c.x, w));
    case 5: {
        Scalar s = ksign(par_of(c.x), par_of(c.a));
        return S.phihat(c.x, S.phi(c.a, w)) - S.phi(c.a, S.phihat(c.x, w)) * s;
    }
    case 6: {
        Scalar s = ksign(par_of(c.x), par_of(c.y));
        TensorVec lhs = S.phihat(c.x, S.psi(c.y, w)) - S.psi(c.y, S.phihat(c.x, w)) * s;
        TensorVec rhs = S.phihat(qp_bracket(c.x, c.y), w) - S.phi(pi(c.y), S.psi(c.x, w)) * s +
                        S.psi(qp_product(c.x, QPElement::poly(pi(c.y))), w);
        return lhs - rhs;
    }
    case 7: {
        Scalar s = ksign(par_of(c.x), par_of(c.a));
        TensorVec lhs = S.psi(c.x, S.phi(c.a, w)) - S.phi(c.a, S.psi(c.x, w)) * s;
        return lhs - S.phi(qp_act(c.x, c.a), w);
    }
    default:
        throw AlgebraError("axiom index must be 1..7");
    }
}

TensorVec lemma_defect(int which, const SuperPoly& a, const SuperPoly& b, const QPElement& d, const TensorVec& w,
                       const QPStructure& S) {
    const Signature& sig = S.sig();
    SuperPoly one = SuperPoly::one(sig);
    auto psi1 = [&](const TensorVec& v) { return S.psi(one, v); };
    // phi_{t_j^{-1}} psi_{t_j x} - psi_x
    auto even_corr = [&](int j, const QPElement& x, const TensorVec& v) {
        QPElement tx = qp_product(QPElement::poly(SuperPoly::t(sig, j)), x);
        return S.phi(SuperPoly::t(sig, j, -1), S.psi(tx, v)) - S.psi(x, v);
    };
    switch (which) {
    case 1: {
        Scalar s = ksign(par_of(a), par_of(b));
        TensorVec rhs = -S.phi(a * b, psi1(w)) + S.phi(a, S.psi(b, w)) + S.phi(b, S.psi(a, w)) * s;
        return S.psi(a * b, w) - rhs;
    }
    case 2: {
        Scalar s = ksign(par_of(a), par_of(d));
        QPElement ad = qp_product(QPElement::poly(a), d);
        TensorVec rhs = S.phihat(d, S.psi(a, w)) - S.psi(a, S.phihat(d, w)) * s + S.phi(a, S.psi(d, w)) * s -
                        S.psi(ad, w) * s;
        return S.phihat(qp_act(d, a), w) - rhs;
    }
    case 3: {
        if (a.size() != 1 || a.terms().begin()->first.mask != 0 || !a.terms().begin()->second.is_one())
            throw AlgebraError("identity (3) needs a Laurent monomial t^r");
        TensorVec rhs = S.phi(a, S.psi(b, w));
        for (int j = 1; j <= sig.m; ++j) {
            SuperPoly coef = b * derive({DerivKind::Euler, j}, a);
            if (coef.is_zero()) continue;
            rhs += S.phi(coef, even_corr(j, QPElement::poly(one), w));
        }
        return S.psi(a * b, w) - rhs;
    }
    case 4: {
        if (a.size() != 1 || !a.terms().begin()->second.is_one()) throw AlgebraError("identity (4) needs zeta_I");
        Monomial mono = a.terms().begin()->first;
        for (int i = 0; i < kMaxEven; ++i)
            if (mono.exps[std::size_t(i)] != 0) throw AlgebraError("identity (4) needs zeta_I");
        TensorVec sum(sig);
        for (int p = 1; p <= sig.n; ++p) {
            SuperPoly dp = derive({DerivKind::Odd, p}, a);
            if (dp.is_zero()) continue;
            SuperPoly zp = SuperPoly::zeta(sig, p);
            sum += S.phi(dp, -S.psi(zp, w) + S.phi(zp, psi1(w)));
        }
        TensorVec rhs = S.phi(a, psi1(w)) + sum * sign_scalar(mono.odd_degree());
        return S.psi(a, w) - rhs;
    }
    case 5: {
        int pa = par_of(a);
        par_of(d);
        TensorVec psid = S.psi(d, w);
        TensorVec odd(sig);
        for (int p = 1; p <= sig.n; ++p) {
            SuperPoly dp = derive({DerivKind::Odd, p}, a);
            if (dp.is_zero()) continue;
            SuperPoly zp = SuperPoly::zeta(sig, p);
            QPElement zd = qp_product(QPElement::poly(zp), d);
            odd += S.phi(dp, S.psi(zd, w) - S.phi(zp, psid));
        }
        TensorVec rhs = odd * sign_scalar(pa + 1) + S.phi(a, psid);
        for (int j = 1; j <= sig.m; ++j) {
            SuperPoly dj = derive({DerivKind::Euler, j}, a);
            if (dj.is_zero()) continue;
            rhs += S.phi(dj, even_corr(j, d, w));
        }
        return S.psi(qp_product(QPElement::poly(a), d), w) - rhs;
    }
    default:
        throw AlgebraError("identity index must be 1..5");
    }
}

// --- loopification ---------------------------------------------------------

namespace {

std::map<int, TensorVec> split_loop(const TensorVec& w) {
    if (!w.sig().with_t0) throw AlgebraError("L(M) elements use the full signature");
    Signature dotted = w.sig().as_dotted();
    std::map<int, TensorVec> out;
    for (const auto& [key, c] : w.terms()) {
        TensorKey k = key;
        k.mono.exps[0] = 0;
        out.try_emplace(key.mono.exps[0], dotted).first->second.add_term(k, c);
    }
    return out;
}

void add_at_degree(TensorVec& out, const TensorVec& dotted, int k) {
    for (const auto& [key, c] : dotted.terms()) {
        TensorKey kk = key;
        kk.mono.exps[0] = k;
        out.add_term(kk, c);
    }
}

Monomial drop_t0(const Monomial& m) {
    Monomial out = m;
    out.exps[0] = 0;
    return out;
}

}  // namespace

TensorVec loop_act(const SmashElement& u, const TensorVec& w, const QPStructure& S) {
    require_same(u.sig(), w.sig(), "loop_act");
    Signature dotted = S.sig();
    TensorVec out(w.sig());
    auto slices = split_loop(w);
    for (const auto& [key, cu] : u.terms()) {
        SuperPoly a_prime = SuperPoly::term(dotted, drop_t0(key.a), cu);
        int r0 = key.a.exps[0];
        if (key.tag == kUnitTag) {
            for (const auto& [k, v] : slices) add_at_degree(out, S.phi(a_prime, v), r0 + k);
            continue;
        }
        int s0 = key.b.exps[0];
        SuperPoly b_prime = SuperPoly::term(dotted, drop_t0(key.b));
        QPElement b_tag = times_tag(b_prime, key.tag);
        QPElement tag = tag_element(dotted, key.tag);
        for (const auto& [k, v] : slices) {
            TensorVec inner = S.psi(b_tag, v);
            if (s0 != 0) inner -= S.phi(b_prime, S.phihat(tag, v)) * Scalar(s0);
            if (key.tag == 0 && k != 0) inner += S.phi(b_prime, v) * Scalar(k);
            add_at_degree(out, S.phi(a_prime, inner), r0 + s0 + k);
        }
    }
    return out;
}

TensorVec loop_g_act(const LoopElement& x, const TensorVec& w, const QPStructure& S) {
    require_same(x.sig(), S.sig(), "loop_g_act");
    TensorVec out(w.sig());
    auto slices = split_loop(w);
    for (const auto& [r, xr] : x.terms()) {
        for (const auto& [s, v] : slices) {
            TensorVec inner = S.psi(xr, v);
            if (r != 0) inner -= S.phihat(xr, v) * Scalar(r);
            if (s != 0) inner += S.phi(pi(xr), v) * Scalar(s);
            add_at_degree(out, inner, r + s);
        }
    }
    return out;
}

TensorVec loop_mult(const SuperPoly& a, const TensorVec& w, const QPStructure& S) {
    require_same(a.sig(), w.sig(), "loop_mult");
    TensorVec out(w.sig());
    auto slices = split_loop(w);
    for (const auto& [r, ar] : split_t0(a))
        for (const auto& [s, v] : slices) add_at_degree(out, S.phi(ar, v), r + s);
    return out;
}

TensorVec t_act(const SmashElement& X, const TensorVec& u, const QPStructure& S) {
    require_same(u.sig(), S.sig(), "t_act");
    TensorVec lifted = u.with_sig(u.sig().as_full());
    TensorVec image = loop_act(X, lifted, S);
    for (const auto& [key, c] : image.terms())
        if (key.mono.exps[0] != 0) throw AlgebraError("t_act: element does not have degree 0");
    return image.with_sig(S.sig());
}

TensorVec t_act(const XGenerator& g, const TensorVec& u, const QPStructure& S) {
    return t_act(make_X(S.sig().as_full(), g), u, S);
}

// --- Omega(N), Phi, Theta --------------------------------------------------

std::vector<TensorVec> shen_larsson_slice(const QPStructure& S) {
    std::vector<TensorVec> out;
    Mask full = S.sig().n >= 32 ? ~Mask(0) : ((Mask(1) << S.sig().n) - 1);
    for (Mask I = 0;; ++I) {
        for (int v = 0; v < S.omega().dim(); ++v) {
            Monomial mono;
            mono.mask = I;
            out.push_back(TensorVec::basis(S.sig(), mono, v));
        }
        if (I == full) break;
    }
    return out;
}

namespace {

struct Coords {
    std::map<TensorKey, int> index;
    Matrix basis_matrix;
};

Coords make_coords(const std::vector<TensorVec>& basis, const std::vector<const TensorVec*>& extra) {
    Coords c;
    for (const auto& b : basis)
        for (const auto& [key, v] : b.terms()) c.index.try_emplace(key, 0);
    for (const TensorVec* e : extra)
        for (const auto& [key, v] : e->terms()) c.index.try_emplace(key, 0);
    int r = 0;
    for (auto& kv : c.index) kv.second = r++;
    c.basis_matrix = Matrix(r, int(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [key, v] : basis[j].terms()) c.basis_matrix.at(c.index.at(key), int(j)) = v;
    return c;
}

std::vector<Scalar> column_of(const Coords& c, const TensorVec& w) {
    std::vector<Scalar> col(std::size_t(c.basis_matrix.rows()));
    for (const auto& [key, v] : w.terms()) col[std::size_t(c.index.at(key))] = v;
    return col;
}

TensorVec combine(const std::vector<TensorVec>& basis, const std::vector<Scalar>& coeffs, Signature sig) {
    TensorVec out(sig);
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (!coeffs[j].is_zero()) out += basis[j] * coeffs[j];
    return out;
}

}  // namespace

std::vector<Scalar> coordinates(const TensorVec& w, const std::vector<TensorVec>& basis) {
    Coords c = make_coords(basis, {&w});
    auto x = solve(c.basis_matrix, column_of(c, w));
    if (!x) throw AlgebraError("vector is outside the span");
    return *x;
}

std::vector<TensorVec> omega_extract(const std::vector<TensorVec>& basis, const QPStructure& S) {
    if (basis.empty()) return {};
    int n = S.sig().n;
    std::vector<std::vector<TensorVec>> images(static_cast<std::size_t>(n));
    std::vector<const TensorVec*> extra;
    for (int k = 1; k <= n; ++k) {
        QPElement dk = tag_element(S.sig(), S.sig().m + k);
        for (const auto& b : basis) images[std::size_t(k - 1)].push_back(S.psi(dk, b));
    }
    for (const auto& row : images)
        for (const auto& v : row) extra.push_back(&v);
    Coords c = make_coords(basis, extra);
    int dim = int(basis.size());
    if (rank(c.basis_matrix) != dim) throw AlgebraError("omega_extract: input vectors are dependent");
    Matrix stacked(n * dim, dim);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < dim; ++j) {
            auto x = solve(c.basis_matrix, column_of(c, images[std::size_t(k)][std::size_t(j)]));
            if (!x) throw AlgebraError("omega_extract: span is not invariant under psi");
            for (int i = 0; i < dim; ++i) stacked.at(k * dim + i, j) = (*x)[std::size_t(i)];
        }
    std::vector<TensorVec> out;
    for (const auto& v : nullspace(stacked)) out.push_back(combine(basis, v, S.sig()));
    return out;
}

TensorVec omega_greedy(const TensorVec& u, const QPStructure& S) {
    if (u.is_zero()) throw AlgebraError("omega_greedy needs a nonzero vector");
    TensorVec v = u;
    int n = S.sig().n;
    for (int step = 0; step <= n + 1; ++step) {
        bool moved = false;
        for (int k = 1; k <= n; ++k) {
            TensorVec next = S.psi(tag_element(S.sig(), S.sig().m + k), v);
            if (!next.is_zero()) {
                v = std::move(next);
                moved = true;
                break;
            }
        }
        if (!moved) return v;
    }
    throw AlgebraError("omega_greedy did not terminate");
}

TensorVec phi_operator(int a, int b, const TensorVec& u, const QPStructure& S) {
    const Signature& sig = S.sig();
    int N = sig.m + sig.n + 1;
    if (a < 0 || b < 0 || a >= N || b >= N) throw AlgebraError("elementary index out of range");
    SuperPoly one = SuperPoly::one(sig);
    if (a == 0) return -S.phihat(tag_element(sig, b), u);
    QPElement db = tag_element(sig, b);
    if (a <= sig.m) {
        // phi_{t_a^{-1}} psi_{t_a d_b} - psi_{d_b}
        SuperPoly ta = SuperPoly::t(sig, a);
        return S.phi(SuperPoly::t(sig, a, -1), S.psi(times_tag(ta, b), u)) - S.psi(db, u);
    }
    // psi_{zeta_k d_b} - phi_{zeta_k} psi_{d_b}
    SuperPoly zk = SuperPoly::zeta(sig, a - sig.m);
    return S.psi(times_tag(zk, b), u) - S.phi(zk, S.psi(db, u));
}

TensorVec phi_operator(const GlMatrix& x, const TensorVec& u, const QPStructure& S) {
    TensorVec out(u.sig());
    for (int a = 0; a < x.dim(); ++a)
        for (int b = 0; b < x.dim(); ++b)
            if (!x.at(a, b).is_zero()) out += phi_operator(a, b, u, S) * x.at(a, b);
    return out;
}

Matrix phi_rep(int a, int b, const QPStructure& S, const std::vector<TensorVec>& omega_basis) {
    int d = int(omega_basis.size());
    std::vector<TensorVec> images;
    for (const auto& u : omega_basis) images.push_back(phi_operator(a, b, u, S));
    std::vector<const TensorVec*> extra;
    for (const auto& v : images) extra.push_back(&v);
    Coords c = make_coords(omega_basis, extra);
    Matrix out(d, d);
    for (int j = 0; j < d; ++j) {
        auto x = solve(c.basis_matrix, column_of(c, images[std::size_t(j)]));
        if (!x)
            throw AlgebraError("Phi(E_" + std::to_string(a) + "_" + std::to_string(b) + ") does not preserve Omega(N)");
        for (int i = 0; i < d; ++i) out.at(i, j) = (*x)[std::size_t(i)];
    }
    return out;
}

OmegaData omega_data(const QPStructure& S) {
    OmegaData data{omega_extract(shen_larsson_slice(S), S), {}, GlModule(S.sig().m, S.sig().n, {}), {}};
    for (const auto& b : data.basis) {
        auto p = S.parity(b);
        if (!p) throw AlgebraError("Omega(N) basis vector is not homogeneous");
        data.parities.push_back(*p);
    }
    data.rep = GlModule(S.sig().m, S.sig().n, data.parities);
    int N = data.rep.size();
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) data.rep.act(a, b) = phi_rep(a, b, S, data.basis);
    // rho: psi_1 and psi_{d_i} act on Omega(N) by scalars
    data.rho.assign(std::size_t(N), Scalar(0));
    for (int alpha = 0; alpha <= S.sig().m; ++alpha) {
        QPElement x = tag_element(S.sig(), alpha);
        std::optional<Scalar> value;
        for (const auto& b : data.basis) {
            TensorVec img = S.psi(x, b);
            if (b.is_zero()) continue;
            const auto& [key, c] = *b.terms().begin();
            Scalar lambda = img.terms().coeff(key) / c;
            if (!(img == b * lambda) || (value && !(*value == lambda)))
                throw AlgebraError("psi does not act on Omega(N) by a scalar");
            value = lambda;
        }
        if (value) data.rho[std::size_t(alpha)] = *value;
    }
    return data;
}

TensorVec theta_iso(const SuperPoly& a, const TensorVec& omega, const QPStructure& S) { return S.phi(a, omega); }

TensorVec theta_map(const TensorVec& src, const std::vector<TensorVec>& omega_basis, const QPStructure& S) {
    TensorVec out(S.sig());
    for (const auto& [key, c] : src.terms()) {
        if (key.index >= int(omega_basis.size())) throw AlgebraError("Omega(N) index out of range");
        out += S.phi(SuperPoly::term(S.sig(), key.mono, c), omega_basis[std::size_t(key.index)]);
    }
    return out;
}

}  // namespace qpmod
