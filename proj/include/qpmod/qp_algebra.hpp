#pragma once

#include <map>

#include "qpmod/vector_field.hpp"

namespace qpmod {

// a (+) x in g = A_dot (+) Der(A_dot); x is kept in the Delta basis.
struct QPElement {
    SuperPoly a;
    VectorField x;

    explicit QPElement(Signature dotted);
    QPElement(SuperPoly a_part, VectorField x_part);
    static QPElement poly(const SuperPoly& a);
    static QPElement field(const VectorField& x);

    const Signature& sig() const { return a.sig(); }
    bool is_zero() const { return a.is_zero() && x.is_zero(); }
    std::optional<int> parity() const;
    QPElement parity_part(int p) const;

    QPElement& operator+=(const QPElement& o);
    QPElement& operator-=(const QPElement& o);
    QPElement& operator*=(const Scalar& c);
    friend QPElement operator+(QPElement l, const QPElement& r) { return l += r; }
    friend QPElement operator-(QPElement l, const QPElement& r) { return l -= r; }
    friend QPElement operator*(QPElement l, const Scalar& c) { return l *= c; }
    friend QPElement operator*(const Scalar& c, QPElement l) { return l *= c; }
    friend bool operator==(const QPElement& l, const QPElement& r) { return l.a == r.a && l.x == r.x; }
};

inline const SuperPoly& pi(const QPElement& x) { return x.a; }

QPElement qp_product(const QPElement& x, const QPElement& y);
QPElement qp_bracket(const QPElement& x, const QPElement& y);
// x(a) := {x, a (+) 0}
SuperPoly qp_act(const QPElement& x, const SuperPoly& a);

// sum_r t0^r (x) x_r
class LoopElement {
public:
    explicit LoopElement(Signature dotted) : sig_(dotted) {}
    static LoopElement single(int r, const QPElement& x);

    const Signature& sig() const { return sig_; }
    const std::map<int, QPElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<int> parity() const;

    void add(int r, const QPElement& x);
    LoopElement& operator+=(const LoopElement& o);
    LoopElement& operator-=(const LoopElement& o);
    LoopElement& operator*=(const Scalar& c);
    friend LoopElement operator+(LoopElement l, const LoopElement& r) { return l += r; }
    friend LoopElement operator-(LoopElement l, const LoopElement& r) { return l -= r; }
    friend LoopElement operator*(LoopElement l, const Scalar& c) { return l *= c; }
    friend bool operator==(const LoopElement& l, const LoopElement& r) {
        return l.sig_ == r.sig_ && l.terms_ == r.terms_;
    }

private:
    Signature sig_;
    std::map<int, QPElement> terms_;
};

LoopElement loop_bracket(const LoopElement& u, const LoopElement& v);
// full-signature derivation of L(A_dot) = A
VectorField loop_der_correspond(const LoopElement& u);
// action of L(g) on L(A_dot) = A (full signature)
SuperPoly loop_apply(const LoopElement& u, const SuperPoly& f);

// t0-graded slices of a full-signature polynomial, each re-tagged dotted
std::map<int, SuperPoly> split_t0(const SuperPoly& f);
SuperPoly with_t0_power(const SuperPoly& dotted, int r);

}  // namespace qpmod
