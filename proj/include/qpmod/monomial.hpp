#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpmod {

// Fixed capacity keeps monomials allocation free; desk-scale inputs fit easily.
inline constexpr int kMaxEven = 8;  // t0..t7
inline constexpr int kMaxOdd = 30;  // zeta_1..zeta_30

using Mask = std::uint32_t;

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (m, n, with_t0). Without t0 this is the dotted algebra; slot 0 of every
// exponent vector is then kept at zero so indices stay uniform.
struct Signature {
    int m = 1;
    int n = 1;
    bool with_t0 = true;

    static Signature full(int m, int n);
    static Signature dotted(int m, int n);

    int first_even() const { return with_t0 ? 0 : 1; }
    bool has_even(int i) const { return i >= first_even() && i <= m; }
    bool has_odd(int k) const { return k >= 1 && k <= n; }
    int num_alpha() const { return m + n + 1; }  // alpha in [0, m+n]
    static int alpha_parity(int m, int alpha) { return alpha > m ? 1 : 0; }
    int alpha_parity(int alpha) const { return alpha_parity(m, alpha); }
    Signature as_full() const { return full(m, n); }
    Signature as_dotted() const { return dotted(m, n); }

    friend bool operator==(const Signature&, const Signature&) = default;
    std::string str() const;
};

void require_same(const Signature& a, const Signature& b, const char* op);

struct Monomial {
    std::array<int, kMaxEven> exps{};
    Mask mask = 0;

    int parity() const { return std::popcount(mask) & 1; }
    int odd_degree() const { return std::popcount(mask); }
    bool is_one() const;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Mask zeta_bit(int k) { return Mask(1) << (k - 1); }
inline bool has_zeta(Mask m, int k) { return (m & zeta_bit(k)) != 0; }
Mask mask_of(const std::vector<int>& ks);
std::vector<int> zeta_indices(Mask m);

// #{(i in a, j in b) : i > j}
int inversions(Mask a, Mask b);

// zeta_a * zeta_b = sign * zeta_{a|b}; nullopt when they overlap
std::optional<int> grassmann_sign(Mask a, Mask b);

struct SignedMonomial {
    Monomial mono;
    int sign;
};
std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b);

void check_monomial(const Signature& sig, const Monomial& mono);

}  // namespace qpmod
