#include "qpmod/filtration.hpp"

#include <algorithm>

namespace qpmod {

int shifted_degree(const Monomial& mono) {
    int d = mono.odd_degree();
    for (int e : mono.exps) d += e;
    return d;
}

Scalar binomial(int e, int p) {
    if (p < 0) return 0;
    mpz_class num = 1, den = 1;
    for (int j = 0; j < p; ++j) {
        num *= (e - j);
        den *= (j + 1);
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

namespace {

// Expand prod_i (1+u_i)^{e_i} into acc, truncating total degree at limit
// (exclusive); exps must be non-negative unless generalized is set.
void expand_monomial(const Monomial& mono, const Scalar& c, int limit, ShiftedPoly& acc) {
    int base = mono.odd_degree();
    if (base >= limit) return;
    // iterate over per-variable powers with a running degree bound
    struct Frame {
        int var;
        int used;
        Monomial cur;
        Scalar coeff;
    };
    std::vector<Frame> stack;
    Monomial start;
    start.mask = mono.mask;
    stack.push_back({0, base, start, c});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.var == kMaxEven) {
            acc.add(f.cur, f.coeff);
            continue;
        }
        int e = mono.exps[f.var];
        int max_p = limit - 1 - f.used;
        if (e >= 0) max_p = std::min(max_p, e);
        for (int p = 0; p <= max_p; ++p) {
            Frame g{f.var + 1, f.used + p, f.cur, f.coeff};
            if (p) {
                g.cur.exps[f.var] = p;
                g.coeff *= binomial(e, p);
            }
            stack.push_back(std::move(g));
        }
    }
}

}  // namespace

ShiftedPoly cleared_shift(const SuperPoly& f) {
    std::array<int, kMaxEven> lift{};
    for (const auto& [mono, c] : f.terms())
        for (int i = 0; i < kMaxEven; ++i) lift[i] = std::max(lift[i], -mono.exps[i]);
    ShiftedPoly out;
    for (const auto& [mono, c] : f.terms()) {
        Monomial m = mono;
        for (int i = 0; i < kMaxEven; ++i) m.exps[i] += lift[i];
        expand_monomial(m, c, std::numeric_limits<int>::max(), out);
    }
    return out;
}

int filt_degree(const SuperPoly& f) {
    if (f.is_zero()) return kInfiniteDegree;
    ShiftedPoly u = cleared_shift(f);
    int best = kInfiniteDegree;
    for (const auto& [mono, c] : u) best = std::min(best, shifted_degree(mono));
    return best;
}

ShiftedPoly taylor_truncated(const SuperPoly& f, int order) {
    ShiftedPoly out;
    for (const auto& [mono, c] : f.terms()) expand_monomial(mono, c, order, out);
    return out;
}

SuperPoly unshift(const ShiftedPoly& u, Signature sig) {
    SuperPoly out(sig);
    for (const auto& [mono, c] : u) {
        SuperPoly term = SuperPoly::constant(sig, c);
        for (int i = 0; i < kMaxEven; ++i)
            if (mono.exps[i] > 0) term = term * SuperPoly::shifted(sig, i).pow(mono.exps[i]);
        Monomial z;
        z.mask = mono.mask;
        out += term * SuperPoly::term(sig, z);
    }
    return out;
}

SuperPoly plus_part(const SuperPoly& f, int k, int kprime) {
    if (k >= kprime) throw AlgebraError("plus_part needs k < kprime");
    ShiftedPoly u = taylor_truncated(f, kprime);
    for (const auto& [mono, c] : u)
        if (shifted_degree(mono) < k) throw AlgebraError("plus_part: input not in S^k");
    return unshift(u, f.sig());
}

}  // namespace qpmod
