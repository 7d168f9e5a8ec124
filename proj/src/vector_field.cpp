#include "qpmod/vector_field.hpp"

namespace qpmod {

void VectorField::check_alpha(int alpha) const {
    bool ok = alpha <= sig_.m ? sig_.has_even(alpha) : sig_.has_odd(alpha - sig_.m);
    if (alpha < 0 || !ok)
        throw AlgebraError("derivation index " + std::to_string(alpha) + " out of range for " + sig_.str());
}

VectorField VectorField::tag(Signature sig, int alpha, Basis basis) {
    VectorField x(sig, basis);
    x.add_term(Monomial{}, alpha, 1);
    return x;
}

VectorField VectorField::make(const SuperPoly& coeff, int alpha, Basis basis) {
    VectorField x(coeff.sig(), basis);
    x.check_alpha(alpha);
    for (const auto& [mono, c] : coeff.terms()) x.terms_.add({mono, alpha}, c);
    return x;
}

void VectorField::add_term(const Monomial& mono, int alpha, const Scalar& c) {
    check_alpha(alpha);
    check_monomial(sig_, mono);
    terms_.add({mono, alpha}, c);
}

Deriv VectorField::deriv_of(int alpha) const {
    if (alpha > sig_.m) return {DerivKind::Odd, alpha - sig_.m};
    return {basis_ == Basis::Delta ? DerivKind::Euler : DerivKind::Plain, alpha};
}

std::optional<int> VectorField::parity() const {
    std::optional<int> p;
    for (const auto& [key, c] : terms_) {
        int q = term_parity(key);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p;
}

VectorField VectorField::parity_part(int p) const {
    VectorField out(sig_, basis_);
    for (const auto& [key, c] : terms_)
        if (term_parity(key) == p) out.terms_.add(key, c);
    return out;
}

SuperPoly VectorField::coefficient(int alpha) const {
    SuperPoly out(sig_);
    for (const auto& [key, c] : terms_)
        if (key.alpha == alpha) out.add_term(key.mono, c);
    return out;
}

VectorField VectorField::in_basis(Basis b) const {
    if (b == basis_) return *this;
    VectorField out(sig_, b);
    // a d_i = (a t_i) d/dt_i
    int shift = b == Basis::DeltaPrime ? 1 : -1;
    for (const auto& [key, c] : terms_) {
        VfKey k = key;
        if (k.alpha <= sig_.m) k.mono.exps[k.alpha] += shift;
        out.terms_.add(k, c);
    }
    return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    require_same(sig_, o.sig_, "vector field add");
    terms_.add_all(o.basis_ == basis_ ? o.terms_ : o.in_basis(basis_).terms_);
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    require_same(sig_, o.sig_, "vector field sub");
    terms_.add_all(o.basis_ == basis_ ? o.terms_ : o.in_basis(basis_).terms_, Scalar(-1));
    return *this;
}

VectorField& VectorField::operator*=(const Scalar& c) {
    terms_.scale(c);
    return *this;
}

VectorField operator*(const SuperPoly& f, const VectorField& x) {
    require_same(f.sig(), x.sig_, "left multiplication");
    VectorField out(x.sig_, x.basis_);
    for (const auto& [mf, cf] : f.terms()) {
        for (const auto& [key, cx] : x.terms_) {
            auto prod = multiply(mf, key.mono);
            if (!prod) continue;
            Scalar c = cf * cx;
            if (prod->sign < 0) c = -c;
            out.terms_.add({prod->mono, key.alpha}, c);
        }
    }
    return out;
}

bool operator==(const VectorField& a, const VectorField& b) {
    if (!(a.sig_ == b.sig_)) return false;
    if (a.basis_ == b.basis_) return a.terms_ == b.terms_;
    return a.in_basis(Basis::Delta).terms_ == b.in_basis(Basis::Delta).terms_;
}

VectorField VectorField::with_sig(Signature sig) const {
    VectorField out(sig, basis_);
    for (const auto& [key, c] : terms_) out.add_term(key.mono, key.alpha, c);
    return out;
}

SuperPoly vf_apply(const VectorField& x, const SuperPoly& f) {
    require_same(x.sig(), f.sig(), "vf_apply");
    SuperPoly out(f.sig());
    for (const auto& [key, cx] : x.terms()) {
        Deriv d = x.deriv_of(key.alpha);
        for (const auto& [mf, cf] : f.terms()) {
            auto df = derive_monomial(d, mf);
            if (!df) continue;
            auto prod = multiply(key.mono, df->mono);
            if (!prod) continue;
            Scalar c = cx * cf * df->coeff;
            if (prod->sign < 0) c = -c;
            out.add_term(prod->mono, c);
        }
    }
    return out;
}

VectorField vf_bracket(const VectorField& x, const VectorField& y_in) {
    require_same(x.sig(), y_in.sig(), "vf_bracket");
    const VectorField y = y_in.in_basis(x.basis());
    VectorField out(x.sig(), x.basis());
    for (const auto& [kx, cx] : x.terms()) {
        Deriv dx = x.deriv_of(kx.alpha);
        int px = x.term_parity(kx);
        for (const auto& [ky, cy] : y.terms()) {
            Deriv dy = y.deriv_of(ky.alpha);
            int py = y.term_parity(ky);
            Scalar c = cx * cy;
            // a delta(b) gamma
            if (auto db = derive_monomial(dx, ky.mono)) {
                if (auto prod = multiply(kx.mono, db->mono)) {
                    Scalar v = c * db->coeff;
                    if (prod->sign < 0) v = -v;
                    out.add_term(prod->mono, ky.alpha, v);
                }
            }
            // - (-1)^{|x||y|} b gamma(a) delta
            if (auto da = derive_monomial(dy, kx.mono)) {
                if (auto prod = multiply(ky.mono, da->mono)) {
                    Scalar v = c * da->coeff;
                    if ((prod->sign < 0) == ((px & py) != 0)) v = -v;
                    out.add_term(prod->mono, kx.alpha, v);
                }
            }
        }
    }
    return out;
}

VectorField h_prime(Signature sig, int i) {
    return SuperPoly::shifted(sig, i) * VectorField::tag(sig, i, Basis::DeltaPrime);
}

VectorField h_odd(Signature sig, int k) {
    return SuperPoly::zeta(sig, k) * VectorField::tag(sig, sig.m + k, Basis::DeltaPrime);
}

VectorField degree_operator(Signature sig) {
    VectorField d(sig, Basis::DeltaPrime);
    for (int i = sig.first_even(); i <= sig.m; ++i) d += h_prime(sig, i);
    for (int k = 1; k <= sig.n; ++k) d += h_odd(sig, k);
    return d;
}

namespace {

template <class T>
Scalar eigen_ratio(const T& image, const T& x, const char* what) {
    if (x.is_zero()) throw NotHomogeneous(std::string("weight of zero ") + what);
    const auto& [key, c] = *x.terms().begin();
    Scalar lambda = image.terms().coeff(key) / c;
    T expect = x * lambda;
    if (!(expect == image)) throw NotHomogeneous(std::string(what) + " is not a weight vector");
    return lambda;
}

}  // namespace

WeightVector weight_of(const SuperPoly& f) {
    const Signature& sig = f.sig();
    WeightVector w{std::vector<Scalar>(sig.m + 1), std::vector<Scalar>(sig.n)};
    for (int i = sig.first_even(); i <= sig.m; ++i)
        w.hprime[i] = eigen_ratio(vf_apply(h_prime(sig, i), f), f, "polynomial");
    for (int k = 1; k <= sig.n; ++k)
        w.h[k - 1] = eigen_ratio(vf_apply(h_odd(sig, k), f), f, "polynomial");
    return w;
}

WeightVector weight_of(const VectorField& x) {
    const Signature& sig = x.sig();
    WeightVector w{std::vector<Scalar>(sig.m + 1), std::vector<Scalar>(sig.n)};
    for (int i = sig.first_even(); i <= sig.m; ++i)
        w.hprime[i] = eigen_ratio(vf_bracket(h_prime(sig, i), x).in_basis(x.basis()), x, "vector field");
    for (int k = 1; k <= sig.n; ++k)
        w.h[k - 1] = eigen_ratio(vf_bracket(h_odd(sig, k), x).in_basis(x.basis()), x, "vector field");
    return w;
}

VectorField special_partial(Signature sig, const SpecialSpec& sp) {
    auto need_even = [&](int i) {
        if (!sig.has_even(i)) throw AlgebraError("even index " + std::to_string(i) + " out of range");
    };
    auto need_positive = [](int p) {
        if (p <= 0) throw AlgebraError("special_partial exponent must be positive");
    };
    // prod_{q not in skip} (t_q - 1)^{s_q}
    auto hat = [&](int skip1, int skip2) {
        if (sp.s.size() != static_cast<std::size_t>(sig.m + 1))
            throw AlgebraError("special_partial: s must have length m+1");
        SuperPoly out = SuperPoly::one(sig);
        for (int q = sig.first_even(); q <= sig.m; ++q) {
            if (sp.s[q] < 0) throw AlgebraError("special_partial: s must be non-negative");
            if (q == skip1 || q == skip2 || sp.s[q] == 0) continue;
            out = out * SuperPoly::shifted(sig, q).pow(sp.s[q]);
        }
        return out;
    };
    auto zeta_I = [&] {
        if (sig.n < kMaxOdd && (sp.I >> sig.n)) throw AlgebraError("special_partial: I out of range");
        return SuperPoly::zeta_mask(sig, sp.I);
    };
    switch (sp.kind) {
    case SpecialKind::Cross: {
        need_even(sp.i);
        need_even(sp.j);
        need_positive(sp.p);
        SuperPoly c = SuperPoly::shifted(sig, sp.j).pow(sp.p) * hat(sp.j, -1);
        return c * VectorField::tag(sig, sp.i, Basis::DeltaPrime);
    }
    case SpecialKind::OddShift: {
        need_even(sp.j);
        need_positive(sp.p);
        if (!sig.has_odd(sp.k)) throw AlgebraError("odd index out of range");
        SuperPoly c = SuperPoly::shifted(sig, sp.j).pow(sp.p) * zeta_I();
        return c * VectorField::tag(sig, sig.m + sp.k, Basis::DeltaPrime);
    }
    case SpecialKind::Diagonal: {
        need_even(sp.i);
        need_positive(sp.p);
        SuperPoly c = SuperPoly::shifted(sig, sp.i).pow(sp.p) * hat(sp.i, -1) * zeta_I();
        return c * VectorField::tag(sig, sp.i, Basis::DeltaPrime);
    }
    case SpecialKind::Double: {
        need_even(sp.i);
        need_even(sp.j);
        need_positive(sp.p);
        need_positive(sp.p2);
        if (sp.i == sp.j) throw AlgebraError("special_partial: i and j must differ");
        SuperPoly c = SuperPoly::shifted(sig, sp.i).pow(sp.p) * SuperPoly::shifted(sig, sp.j).pow(sp.p2) *
                      hat(sp.i, sp.j) * zeta_I();
        return c * VectorField::tag(sig, sp.i, Basis::DeltaPrime);
    }
    }
    throw AlgebraError("unknown special kind");
}

}  // namespace qpmod
