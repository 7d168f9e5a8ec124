#pragma once

#include <optional>

#include "qpmod/monomial.hpp"
#include "qpmod/sparse.hpp"

namespace qpmod {

// Element of C[t_i^{+-1}] (x) Lambda(zeta_1..zeta_n).
class SuperPoly {
public:
    explicit SuperPoly(Signature sig) : sig_(sig) {}

    static SuperPoly constant(Signature sig, const Scalar& c);
    static SuperPoly one(Signature sig) { return constant(sig, 1); }
    static SuperPoly term(Signature sig, const Monomial& mono, const Scalar& c = 1);
    static SuperPoly t(Signature sig, int i, int power = 1);
    static SuperPoly shifted(Signature sig, int i);  // t_i - 1
    static SuperPoly zeta(Signature sig, int k);
    static SuperPoly zeta_mask(Signature sig, Mask mask);

    const Signature& sig() const { return sig_; }
    const SparseTerms<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coeff(const Monomial& mono) const { return terms_.coeff(mono); }

    void add_term(const Monomial& mono, const Scalar& c);

    // nullopt for zero or mixed parity
    std::optional<int> parity() const;
    SuperPoly parity_part(int p) const;
    // value at t = 1, zeta = 0
    Scalar value_at_one() const;

    SuperPoly& operator+=(const SuperPoly& o);
    SuperPoly& operator-=(const SuperPoly& o);
    SuperPoly& operator*=(const Scalar& c);
    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator*(SuperPoly a, const Scalar& c) { return a *= c; }
    friend SuperPoly operator*(const Scalar& c, SuperPoly a) { return a *= c; }
    SuperPoly operator-() const { return *this * Scalar(-1); }
    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);
    SuperPoly pow(int k) const;

    friend bool operator==(const SuperPoly& a, const SuperPoly& b) {
        return a.sig_ == b.sig_ && a.terms_ == b.terms_;
    }

    SuperPoly with_sig(Signature sig) const;  // re-tag; checks every monomial fits

private:
    Signature sig_;
    SparseTerms<Monomial> terms_;
};

SuperPoly mul(const SuperPoly& a, const SuperPoly& b);

// Euler d_i = t_i d/dt_i, Plain d/dt_i, Odd is the left superderivation d/dzeta_k.
enum class DerivKind { Euler, Plain, Odd };

struct Deriv {
    DerivKind kind;
    int index;
    int parity() const { return kind == DerivKind::Odd ? 1 : 0; }
};

void check_deriv(const Signature& sig, const Deriv& d);
SuperPoly derive(const Deriv& d, const SuperPoly& f);

// single monomial: result coefficient and monomial, nullopt when zero
struct DerivedMonomial {
    Monomial mono;
    Scalar coeff;
};
std::optional<DerivedMonomial> derive_monomial(const Deriv& d, const Monomial& mono);

}  // namespace qpmod
