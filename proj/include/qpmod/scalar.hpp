#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace qpmod {

// Gaussian rational re + im*i, exact.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}  // NOLINT(implicit)
    Scalar(mpq_class re, mpq_class im = 0);

    static Scalar i();
    static Scalar fraction(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return is_real() && re_ == 1; }

    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "3/2", "-1i", "1/2-3i"
    std::string str() const;
    // accepts the same forms as str() produces, plus "p/q+r/si" with spaces stripped
    static Scalar parse(std::string_view text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

inline Scalar sign_scalar(int parity_exponent) {
    return (parity_exponent & 1) ? Scalar(-1) : Scalar(1);
}

}  // namespace qpmod
