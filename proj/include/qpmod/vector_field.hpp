#pragma once

#include <vector>

#include "qpmod/superpoly.hpp"

namespace qpmod {

// Delta: even tags are d_i = t_i d/dt_i.  DeltaPrime: even tags are d/dt_i.
// Odd tags are d/dzeta_k in both.
enum class Basis { Delta, DeltaPrime };

// alpha <= m is the even index i, alpha = m + k is the odd index k.
struct VfKey {
    Monomial mono;
    int alpha;
    friend auto operator<=>(const VfKey&, const VfKey&) = default;
};

class VectorField {
public:
    explicit VectorField(Signature sig, Basis basis = Basis::Delta) : sig_(sig), basis_(basis) {}

    static VectorField tag(Signature sig, int alpha, Basis basis = Basis::Delta);
    static VectorField make(const SuperPoly& coeff, int alpha, Basis basis = Basis::Delta);

    const Signature& sig() const { return sig_; }
    Basis basis() const { return basis_; }
    const SparseTerms<VfKey>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& mono, int alpha, const Scalar& c);
    Deriv deriv_of(int alpha) const;
    int term_parity(const VfKey& k) const { return (k.mono.parity() + sig_.alpha_parity(k.alpha)) & 1; }

    std::optional<int> parity() const;
    VectorField parity_part(int p) const;
    SuperPoly coefficient(int alpha) const;
    VectorField in_basis(Basis b) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(const Scalar& c);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Scalar& c) { return a *= c; }
    friend VectorField operator*(const Scalar& c, VectorField a) { return a *= c; }
    VectorField operator-() const { return *this * Scalar(-1); }
    // left A-module structure
    friend VectorField operator*(const SuperPoly& f, const VectorField& x);

    // Equal as derivations; representations in different bases are compared in Delta.
    friend bool operator==(const VectorField& a, const VectorField& b);

    VectorField with_sig(Signature sig) const;

private:
    void check_alpha(int alpha) const;

    Signature sig_;
    Basis basis_;
    SparseTerms<VfKey> terms_;
};

SuperPoly vf_apply(const VectorField& x, const SuperPoly& f);
// Result in the basis of x.
VectorField vf_bracket(const VectorField& x, const VectorField& y);

// D = sum (t_i - 1) d/dt_i + sum zeta_k d/dzeta_k, in DeltaPrime.
VectorField degree_operator(Signature sig);

// h'_i = (t_i - 1) d/dt_i and h_k = zeta_k d/dzeta_k
VectorField h_prime(Signature sig, int i);
VectorField h_odd(Signature sig, int k);

struct WeightVector {
    std::vector<Scalar> hprime;  // index i = 0..m; slot 0 unused (zero) without t0
    std::vector<Scalar> h;       // index k-1
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

class NotHomogeneous : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

WeightVector weight_of(const SuperPoly& f);
WeightVector weight_of(const VectorField& x);

enum class SpecialKind {
    Cross,     // d^s_{i,j,p}
    OddShift,  // d_{j,p,k,I}
    Diagonal,  // d^s_{i,p,I}
    Double,    // d^s_{i,j,p,p',I}
};

struct SpecialSpec {
    SpecialKind kind = SpecialKind::Cross;
    int i = 0;
    int j = 0;
    int p = 1;
    int p2 = 1;
    std::vector<int> s;  // length m+1, non-negative
    int k = 1;
    Mask I = 0;
};

VectorField special_partial(Signature sig, const SpecialSpec& spec);

}  // namespace qpmod
