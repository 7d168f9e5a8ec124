#pragma once

#include <map>
#include <vector>

#include "qpmod/gl.hpp"
#include "qpmod/vector_field.hpp"

namespace qpmod {

inline constexpr int kUnitTag = -1;

// a # b d_alpha, or a # 1 when tag == kUnitTag (b is then 1).
struct SmashKey {
    Monomial a;
    Monomial b;
    int tag;
    friend auto operator<=>(const SmashKey&, const SmashKey&) = default;
};

// Element of A # (C 1 + Der(A)), full signature, derivation tags in Delta.
class SmashElement {
public:
    explicit SmashElement(Signature full);

    static SmashElement unit(Signature full, const Monomial& a, const Scalar& c = 1);
    static SmashElement gen(Signature full, const Monomial& a, const Monomial& b, int alpha, const Scalar& c = 1);
    // p # x for a polynomial p and a derivation x (any basis)
    static SmashElement tensor(const SuperPoly& p, const VectorField& x);
    static SmashElement tensor_unit(const SuperPoly& p);

    const Signature& sig() const { return sig_; }
    const SparseTerms<SmashKey>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const SmashKey& key, const Scalar& c);
    int term_parity(const SmashKey& key) const;
    std::optional<int> parity() const;
    // Z^{m+1}-degree exp(a) + exp(b) of a term
    std::array<int, kMaxEven> term_degree(const SmashKey& key) const;

    SmashElement& operator+=(const SmashElement& o);
    SmashElement& operator-=(const SmashElement& o);
    SmashElement& operator*=(const Scalar& c);
    friend SmashElement operator+(SmashElement l, const SmashElement& r) { return l += r; }
    friend SmashElement operator-(SmashElement l, const SmashElement& r) { return l -= r; }
    friend SmashElement operator*(SmashElement l, const Scalar& c) { return l *= c; }
    friend SmashElement operator*(const Scalar& c, SmashElement l) { return l *= c; }
    friend bool operator==(const SmashElement& l, const SmashElement& r) {
        return l.sig_ == r.sig_ && l.terms_ == r.terms_;
    }

private:
    Signature sig_;
    SparseTerms<SmashKey> terms_;
};

SmashElement smash_commutator(const SmashElement& u, const SmashElement& v);

// tau(I, J) = sum over j in J of #{i in I : i > j}
int tau(Mask I, Mask J);

// X_{r, J, d_alpha}; shift.exps is r (length m+1), shift.mask is J.
struct XGenerator {
    Monomial shift;
    int alpha;
    friend auto operator<=>(const XGenerator&, const XGenerator&) = default;
};
using XCombination = std::map<XGenerator, Scalar>;

XGenerator make_generator(const std::vector<int>& r, Mask J, int alpha);
SmashElement make_X(Signature full, const XGenerator& g);
SmashElement make_X(Signature full, const XCombination& combo);

// Coordinates of an element of T in the X generators; throws if not in T.
XCombination express_in_generators(const SmashElement& u);

VectorField psi_map(Signature full, const XCombination& combo);
VectorField psi_map(const SmashElement& u);
// Inverse of psi_map on S Delta; throws if some coefficient is not in S.
XCombination psi_preimage(const VectorField& x);

// theta: S Delta -> S Delta / S^2 Delta = gl(m+1|n); full signature.
GlMatrix theta_project(const VectorField& x);

}  // namespace qpmod
