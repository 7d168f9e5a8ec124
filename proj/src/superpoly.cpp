#include "qpmod/superpoly.hpp"

namespace qpmod {

SuperPoly SuperPoly::constant(Signature sig, const Scalar& c) {
    SuperPoly p(sig);
    p.terms_.add(Monomial{}, c);
    return p;
}

SuperPoly SuperPoly::term(Signature sig, const Monomial& mono, const Scalar& c) {
    SuperPoly p(sig);
    p.add_term(mono, c);
    return p;
}

SuperPoly SuperPoly::t(Signature sig, int i, int power) {
    if (!sig.has_even(i)) throw AlgebraError("no variable t" + std::to_string(i) + " in " + sig.str());
    Monomial mono;
    mono.exps[i] = power;
    return term(sig, mono);
}

SuperPoly SuperPoly::shifted(Signature sig, int i) { return t(sig, i) - one(sig); }

SuperPoly SuperPoly::zeta(Signature sig, int k) {
    if (!sig.has_odd(k)) throw AlgebraError("no variable zeta" + std::to_string(k) + " in " + sig.str());
    Monomial mono;
    mono.mask = zeta_bit(k);
    return term(sig, mono);
}

SuperPoly SuperPoly::zeta_mask(Signature sig, Mask mask) {
    Monomial mono;
    mono.mask = mask;
    return term(sig, mono);
}

void SuperPoly::add_term(const Monomial& mono, const Scalar& c) {
    check_monomial(sig_, mono);
    terms_.add(mono, c);
}

std::optional<int> SuperPoly::parity() const {
    std::optional<int> p;
    for (const auto& [mono, c] : terms_) {
        if (p && *p != mono.parity()) return std::nullopt;
        p = mono.parity();
    }
    return p;
}

SuperPoly SuperPoly::parity_part(int p) const {
    SuperPoly out(sig_);
    for (const auto& [mono, c] : terms_)
        if (mono.parity() == p) out.terms_.add(mono, c);
    return out;
}

Scalar SuperPoly::value_at_one() const {
    Scalar v;
    for (const auto& [mono, c] : terms_)
        if (mono.mask == 0) v += c;
    return v;
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
    require_same(sig_, o.sig_, "add");
    terms_.add_all(o.terms_);
    return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
    require_same(sig_, o.sig_, "sub");
    terms_.add_all(o.terms_, Scalar(-1));
    return *this;
}

SuperPoly& SuperPoly::operator*=(const Scalar& c) {
    terms_.scale(c);
    return *this;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    require_same(a.sig_, b.sig_, "mul");
    SuperPoly out(a.sig_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            auto prod = multiply(ma, mb);
            if (!prod) continue;
            Scalar c = ca * cb;
            if (prod->sign < 0) c = -c;
            out.terms_.add(prod->mono, c);
        }
    }
    return out;
}

SuperPoly mul(const SuperPoly& a, const SuperPoly& b) { return a * b; }

SuperPoly SuperPoly::pow(int k) const {
    if (k < 0) throw AlgebraError("negative power of a polynomial");
    SuperPoly out = one(sig_);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

SuperPoly SuperPoly::with_sig(Signature sig) const {
    SuperPoly out(sig);
    for (const auto& [mono, c] : terms_) out.add_term(mono, c);
    return out;
}

void check_deriv(const Signature& sig, const Deriv& d) {
    bool ok = d.kind == DerivKind::Odd ? sig.has_odd(d.index) : sig.has_even(d.index);
    if (!ok) throw AlgebraError("derivation index " + std::to_string(d.index) + " out of range for " + sig.str());
}

std::optional<DerivedMonomial> derive_monomial(const Deriv& d, const Monomial& mono) {
    switch (d.kind) {
    case DerivKind::Euler: {
        int e = mono.exps[d.index];
        if (e == 0) return std::nullopt;
        return DerivedMonomial{mono, Scalar(e)};
    }
    case DerivKind::Plain: {
        int e = mono.exps[d.index];
        if (e == 0) return std::nullopt;
        Monomial out = mono;
        out.exps[d.index] -= 1;
        return DerivedMonomial{out, Scalar(e)};
    }
    case DerivKind::Odd: {
        if (!has_zeta(mono.mask, d.index)) return std::nullopt;
        Monomial out = mono;
        out.mask &= ~zeta_bit(d.index);
        int before = std::popcount(mono.mask & (zeta_bit(d.index) - 1));
        return DerivedMonomial{out, Scalar((before & 1) ? -1 : 1)};
    }
    }
    return std::nullopt;
}

SuperPoly derive(const Deriv& d, const SuperPoly& f) {
    check_deriv(f.sig(), d);
    SuperPoly out(f.sig());
    for (const auto& [mono, c] : f.terms()) {
        auto r = derive_monomial(d, mono);
        if (r) out.add_term(r->mono, r->coeff * c);
    }
    return out;
}

}  // namespace qpmod
