#include "qpmod/monomial.hpp"

namespace qpmod {

Signature Signature::full(int m, int n) {
    if (m < 0 || n < 0 || m + 1 > kMaxEven || n > kMaxOdd)
        throw AlgebraError("signature out of range: m=" + std::to_string(m) +
                           " n=" + std::to_string(n));
    return Signature{m, n, true};
}

Signature Signature::dotted(int m, int n) {
    Signature s = full(m, n);
    s.with_t0 = false;
    return s;
}

std::string Signature::str() const {
    return "(m=" + std::to_string(m) + ",n=" + std::to_string(n) +
           (with_t0 ? ",t0)" : ",dotted)");
}

void require_same(const Signature& a, const Signature& b, const char* op) {
    if (!(a == b))
        throw AlgebraError(std::string("signature mismatch in ") + op + ": " + a.str() +
                           " vs " + b.str());
}

bool Monomial::is_one() const {
    if (mask) return false;
    for (int e : exps)
        if (e) return false;
    return true;
}

Mask mask_of(const std::vector<int>& ks) {
    Mask m = 0;
    for (int k : ks) {
        if (k < 1 || k > kMaxOdd) throw AlgebraError("odd index out of range");
        m |= zeta_bit(k);
    }
    return m;
}

std::vector<int> zeta_indices(Mask m) {
    std::vector<int> out;
    for (int k = 1; m; ++k, m >>= 1)
        if (m & 1) out.push_back(k);
    return out;
}

int inversions(Mask a, Mask b) {
    int count = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        count += std::popcount(a >> (j + 1));
    }
    return count;
}

std::optional<int> grassmann_sign(Mask a, Mask b) {
    if (a & b) return std::nullopt;
    return (inversions(a, b) & 1) ? -1 : 1;
}

std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b) {
    auto s = grassmann_sign(a.mask, b.mask);
    if (!s) return std::nullopt;
    SignedMonomial out{a, *s};
    for (int i = 0; i < kMaxEven; ++i) out.mono.exps[i] += b.exps[i];
    out.mono.mask |= b.mask;
    return out;
}

void check_monomial(const Signature& sig, const Monomial& mono) {
    for (int i = 0; i < kMaxEven; ++i)
        if (mono.exps[i] != 0 && !sig.has_even(i))
            throw AlgebraError("variable t" + std::to_string(i) + " not in " + sig.str());
    if (sig.n < kMaxOdd && (mono.mask >> sig.n) != 0)
        throw AlgebraError("odd variable out of range for " + sig.str());
}

}  // namespace qpmod
