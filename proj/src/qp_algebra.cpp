#include "qpmod/qp_algebra.hpp"

namespace qpmod {

namespace {

void require_dotted(const Signature& sig, const char* what) {
    if (sig.with_t0) throw AlgebraError(std::string(what) + " needs the dotted signature");
}

}  // namespace

QPElement::QPElement(Signature dotted) : a(dotted), x(dotted) { require_dotted(dotted, "QPElement"); }

QPElement::QPElement(SuperPoly a_part, VectorField x_part)
    : a(std::move(a_part)), x(x_part.in_basis(Basis::Delta)) {
    require_same(a.sig(), x.sig(), "QPElement");
    require_dotted(a.sig(), "QPElement");
}

QPElement QPElement::poly(const SuperPoly& a) { return QPElement(a, VectorField(a.sig())); }
QPElement QPElement::field(const VectorField& x) { return QPElement(SuperPoly(x.sig()), x); }

std::optional<int> QPElement::parity() const {
    auto pa = a.parity();
    auto px = x.parity();
    if (a.is_zero()) return px;
    if (x.is_zero()) return pa;
    if (pa && px && *pa == *px) return pa;
    return std::nullopt;
}

QPElement QPElement::parity_part(int p) const { return QPElement(a.parity_part(p), x.parity_part(p)); }

QPElement& QPElement::operator+=(const QPElement& o) {
    a += o.a;
    x += o.x;
    return *this;
}

QPElement& QPElement::operator-=(const QPElement& o) {
    a -= o.a;
    x -= o.x;
    return *this;
}

QPElement& QPElement::operator*=(const Scalar& c) {
    a *= c;
    x *= c;
    return *this;
}

QPElement qp_product(const QPElement& l, const QPElement& r) {
    require_same(l.sig(), r.sig(), "qp_product");
    // (a + delta)(b + sigma) = ab + (a sigma + (-1)^{|b||delta|} b delta)
    VectorField field = l.a * r.x;
    for (int pb = 0; pb < 2; ++pb) {
        SuperPoly b = r.a.parity_part(pb);
        if (b.is_zero()) continue;
        for (int pd = 0; pd < 2; ++pd) {
            VectorField delta = l.x.parity_part(pd);
            if (delta.is_zero()) continue;
            VectorField t = b * delta;
            if (pb & pd) field -= t;
            else field += t;
        }
    }
    return QPElement(l.a * r.a, field);
}

QPElement qp_bracket(const QPElement& l, const QPElement& r) {
    require_same(l.sig(), r.sig(), "qp_bracket");
    // {a + delta, b + sigma} = (delta(b) - (-1)^{|a||sigma|} sigma(a)) + [delta, sigma]
    SuperPoly a = vf_apply(l.x, r.a);
    for (int pa = 0; pa < 2; ++pa) {
        SuperPoly la = l.a.parity_part(pa);
        if (la.is_zero()) continue;
        for (int ps = 0; ps < 2; ++ps) {
            VectorField sigma = r.x.parity_part(ps);
            if (sigma.is_zero()) continue;
            SuperPoly t = vf_apply(sigma, la);
            if (pa & ps) a += t;
            else a -= t;
        }
    }
    return QPElement(a, vf_bracket(l.x, r.x));
}

SuperPoly qp_act(const QPElement& x, const SuperPoly& a) { return vf_apply(x.x, a); }

LoopElement LoopElement::single(int r, const QPElement& x) {
    LoopElement u(x.sig());
    u.add(r, x);
    return u;
}

std::optional<int> LoopElement::parity() const {
    std::optional<int> p;
    for (const auto& [r, x] : terms_) {
        auto q = x.parity();
        if (!q || (p && *p != *q)) return std::nullopt;
        p = q;
    }
    return p;
}

void LoopElement::add(int r, const QPElement& x) {
    require_same(sig_, x.sig(), "loop add");
    if (x.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(r, x);
    if (!inserted) {
        it->second += x;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
    for (const auto& [r, x] : o.terms_) add(r, x);
    return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
    for (const auto& [r, x] : o.terms_) add(r, x * Scalar(-1));
    return *this;
}

LoopElement& LoopElement::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
}

LoopElement loop_bracket(const LoopElement& u, const LoopElement& v) {
    require_same(u.sig(), v.sig(), "loop_bracket");
    LoopElement out(u.sig());
    for (const auto& [r, x] : u.terms()) {
        for (const auto& [s, y] : v.terms()) {
            QPElement z = qp_bracket(x, y);
            if (r != 0) z -= qp_product(x, QPElement::poly(pi(y))) * Scalar(r);
            if (s != 0) z += qp_product(QPElement::poly(pi(x)), y) * Scalar(s);
            out.add(r + s, z);
        }
    }
    return out;
}

SuperPoly with_t0_power(const SuperPoly& dotted, int r) {
    SuperPoly out(dotted.sig().as_full());
    for (const auto& [mono, c] : dotted.terms()) {
        Monomial m = mono;
        m.exps[0] = r;
        out.add_term(m, c);
    }
    return out;
}

std::map<int, SuperPoly> split_t0(const SuperPoly& f) {
    if (!f.sig().with_t0) throw AlgebraError("split_t0 needs the full signature");
    std::map<int, SuperPoly> out;
    Signature dotted = f.sig().as_dotted();
    for (const auto& [mono, c] : f.terms()) {
        Monomial m = mono;
        m.exps[0] = 0;
        out.try_emplace(mono.exps[0], dotted).first->second.add_term(m, c);
    }
    return out;
}

VectorField loop_der_correspond(const LoopElement& u) {
    Signature full = u.sig().as_full();
    VectorField out(full, Basis::Delta);
    for (const auto& [r, x] : u.terms()) {
        for (const auto& [mono, c] : x.a.terms()) {
            Monomial m = mono;
            m.exps[0] = r;
            out.add_term(m, 0, c);
        }
        for (const auto& [key, c] : x.x.terms()) {
            Monomial m = key.mono;
            m.exps[0] = r;
            out.add_term(m, key.alpha, c);
        }
    }
    return out;
}

SuperPoly loop_apply(const LoopElement& u, const SuperPoly& f) {
    Signature full = u.sig().as_full();
    require_same(full, f.sig(), "loop_apply");
    SuperPoly out(full);
    auto slices = split_t0(f);
    for (const auto& [r, x] : u.terms()) {
        for (const auto& [s, b] : slices) {
            // s pi(x) b + {x, b}
            SuperPoly v = qp_act(x, b);
            if (s != 0) v += pi(x) * b * Scalar(s);
            out += with_t0_power(v, r + s);
        }
    }
    return out;
}

}  // namespace qpmod
