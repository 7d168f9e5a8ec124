#include "qpmod/smash.hpp"

#include "qpmod/filtration.hpp"

namespace qpmod {

SmashElement::SmashElement(Signature full) : sig_(full) {
    if (!full.with_t0) throw AlgebraError("smash elements live over the full signature");
}

SmashElement SmashElement::unit(Signature full, const Monomial& a, const Scalar& c) {
    SmashElement u(full);
    u.add_term({a, Monomial{}, kUnitTag}, c);
    return u;
}

SmashElement SmashElement::gen(Signature full, const Monomial& a, const Monomial& b, int alpha, const Scalar& c) {
    SmashElement u(full);
    u.add_term({a, b, alpha}, c);
    return u;
}

SmashElement SmashElement::tensor(const SuperPoly& p, const VectorField& x) {
    require_same(p.sig(), x.sig(), "smash tensor");
    VectorField xd = x.in_basis(Basis::Delta);
    SmashElement u(p.sig());
    for (const auto& [pm, pc] : p.terms())
        for (const auto& [key, xc] : xd.terms()) u.add_term({pm, key.mono, key.alpha}, pc * xc);
    return u;
}

SmashElement SmashElement::tensor_unit(const SuperPoly& p) {
    SmashElement u(p.sig());
    for (const auto& [pm, pc] : p.terms()) u.add_term({pm, Monomial{}, kUnitTag}, pc);
    return u;
}

void SmashElement::add_term(const SmashKey& key, const Scalar& c) {
    check_monomial(sig_, key.a);
    check_monomial(sig_, key.b);
    if (key.tag == kUnitTag) {
        if (!key.b.is_one()) throw AlgebraError("unit smash term with nontrivial b");
    } else if (key.tag < 0 || key.tag > sig_.m + sig_.n) {
        throw AlgebraError("smash tag out of range");
    }
    terms_.add(key, c);
}

int SmashElement::term_parity(const SmashKey& key) const {
    int tp = key.tag == kUnitTag ? 0 : sig_.alpha_parity(key.tag);
    return (key.a.parity() + key.b.parity() + tp) & 1;
}

std::optional<int> SmashElement::parity() const {
    std::optional<int> p;
    for (const auto& [key, c] : terms_) {
        int q = term_parity(key);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p;
}

std::array<int, kMaxEven> SmashElement::term_degree(const SmashKey& key) const {
    std::array<int, kMaxEven> d{};
    for (int i = 0; i < kMaxEven; ++i) d[i] = key.a.exps[i] + key.b.exps[i];
    return d;
}

SmashElement& SmashElement::operator+=(const SmashElement& o) {
    require_same(sig_, o.sig_, "smash add");
    terms_.add_all(o.terms_);
    return *this;
}

SmashElement& SmashElement::operator-=(const SmashElement& o) {
    require_same(sig_, o.sig_, "smash sub");
    terms_.add_all(o.terms_, Scalar(-1));
    return *this;
}

SmashElement& SmashElement::operator*=(const Scalar& c) {
    terms_.scale(c);
    return *this;
}

namespace {

VectorField field_of(const Signature& sig, const SmashKey& k) {
    VectorField x(sig, Basis::Delta);
    x.add_term(k.b, k.tag, 1);
    return x;
}

// [a#x, c#y] for single terms with unit coefficients
SmashElement term_commutator(const SmashElement& ctx, const SmashKey& u, const SmashKey& v) {
    const Signature& sig = ctx.sig();
    SmashElement out(sig);
    bool uu = u.tag == kUnitTag;
    bool vu = v.tag == kUnitTag;
    if (uu && vu) return out;
    int pu = ctx.term_parity(u);
    int pv = ctx.term_parity(v);
    SuperPoly a = SuperPoly::term(sig, u.a);
    SuperPoly c = SuperPoly::term(sig, v.a);
    if (!uu) {
        VectorField x = field_of(sig, u);
        SuperPoly axc = a * vf_apply(x, c);
        if (vu) return SmashElement::tensor_unit(axc);
        out += SmashElement::tensor(axc, field_of(sig, v));
    }
    if (!vu) {
        VectorField y = field_of(sig, v);
        SuperPoly cya = c * vf_apply(y, a);
        Scalar s = (pu & pv) ? Scalar(1) : Scalar(-1);
        if (uu) return SmashElement::tensor_unit(cya) * s;
        out += SmashElement::tensor(cya, field_of(sig, u)) * s;
    }
    // (-1)^{|c||x|} ac # [x, y]
    VectorField x = field_of(sig, u);
    VectorField y = field_of(sig, v);
    int px = (u.b.parity() + sig.alpha_parity(u.tag)) & 1;
    Scalar s = (v.a.parity() & px) ? Scalar(-1) : Scalar(1);
    out += SmashElement::tensor(a * c, vf_bracket(x, y)) * s;
    return out;
}

}  // namespace

SmashElement smash_commutator(const SmashElement& u, const SmashElement& v) {
    require_same(u.sig(), v.sig(), "smash_commutator");
    SmashElement out(u.sig());
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) out += term_commutator(u, ku, kv) * (cu * cv);
    return out;
}

int tau(Mask I, Mask J) { return inversions(I, J); }

XGenerator make_generator(const std::vector<int>& r, Mask J, int alpha) {
    if (r.size() > std::size_t(kMaxEven)) throw AlgebraError("shift vector too long");
    XGenerator g{Monomial{}, alpha};
    for (std::size_t i = 0; i < r.size(); ++i) g.shift.exps[i] = r[i];
    g.shift.mask = J;
    return g;
}

SmashElement make_X(Signature full, const XGenerator& g) {
    SmashElement x(full);
    Monomial pos = g.shift;
    pos.mask = 0;
    Monomial neg;
    for (int i = 0; i < kMaxEven; ++i) neg.exps[i] = -pos.exps[i];
    Mask J = g.shift.mask;
    if (J == 0) {
        x.add_term({neg, pos, g.alpha}, 1);
        x.add_term({Monomial{}, Monomial{}, g.alpha}, -1);
        return x;
    }
    // all subsets I of J
    for (Mask I = J;; I = (I - 1) & J) {
        Mask rest = J & ~I;
        int e = std::popcount(I) + tau(I, rest);
        Monomial a = neg;
        a.mask = I;
        Monomial b = pos;
        b.mask = rest;
        x.add_term({a, b, g.alpha}, (e & 1) ? -1 : 1);
        if (I == 0) break;
    }
    return x;
}

SmashElement make_X(Signature full, const XCombination& combo) {
    SmashElement x(full);
    for (const auto& [g, c] : combo) x += make_X(full, g) * c;
    return x;
}

XCombination express_in_generators(const SmashElement& u) {
    XCombination combo;
    for (const auto& [key, c] : u.terms()) {
        if (key.tag == kUnitTag) throw AlgebraError("element has A#1 terms, not in T");
        for (int i = 0; i < kMaxEven; ++i)
            if (key.a.exps[i] + key.b.exps[i] != 0) throw AlgebraError("element has nonzero degree, not in T");
        if (key.a.mask != 0 || key.b.is_one()) continue;
        XGenerator g{key.b, key.tag};
        combo[g] = c;
    }
    if (!(make_X(u.sig(), combo) == u)) throw AlgebraError("element is not in the span of the X generators");
    return combo;
}

VectorField psi_map(Signature full, const XCombination& combo) {
    VectorField out(full, Basis::Delta);
    for (const auto& [g, c] : combo) {
        Monomial r = g.shift;
        if (g.shift.mask == 0) {
            if (r.is_one()) continue;  // X_{0,0,d} = 0
            out.add_term(r, g.alpha, c);
            out.add_term(Monomial{}, g.alpha, -c);
        } else {
            out.add_term(r, g.alpha, c);
        }
    }
    return out;
}

VectorField psi_map(const SmashElement& u) { return psi_map(u.sig(), express_in_generators(u)); }

XCombination psi_preimage(const VectorField& x_in) {
    if (!x_in.sig().with_t0) throw AlgebraError("psi_preimage needs the full signature");
    VectorField x = x_in.in_basis(Basis::Delta);
    XCombination combo;
    std::map<int, Scalar> constant_part;
    for (const auto& [key, c] : x.terms()) {
        if (key.mono.mask == 0) {
            constant_part[key.alpha] += c;
            if (key.mono.is_one()) continue;
        }
        combo[XGenerator{key.mono, key.alpha}] = c;
    }
    // the t^r - 1 generators only absorb coefficients summing to zero at t = 1
    for (const auto& [alpha, c] : constant_part)
        if (!c.is_zero()) throw AlgebraError("coefficient of tag " + std::to_string(alpha) + " is not in S");
    return combo;
}

GlMatrix theta_project(const VectorField& x_in) {
    const Signature& sig = x_in.sig();
    if (!sig.with_t0) throw AlgebraError("theta_project needs the full signature");
    VectorField x = x_in.in_basis(Basis::Delta);
    GlMatrix out(sig.m, sig.n);
    for (int alpha = 0; alpha <= sig.m + sig.n; ++alpha) {
        SuperPoly f = x.coefficient(alpha);
        if (f.is_zero()) continue;
        ShiftedPoly u = taylor_truncated(f, 2);
        for (const auto& [mono, c] : u) {
            int deg = shifted_degree(mono);
            if (deg == 0)
                throw AlgebraError("theta_project: coefficient of tag " + std::to_string(alpha) + " is not in S");
            // degree one: a single u_i or a single zeta_k
            int row = -1;
            if (mono.mask) {
                row = sig.m + std::countr_zero(mono.mask) + 1;
            } else {
                for (int i = 0; i < kMaxEven; ++i)
                    if (mono.exps[i]) row = i;
            }
            out.at(row, alpha) += c;
        }
    }
    return out;
}

}  // namespace qpmod
