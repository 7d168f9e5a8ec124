#pragma once

#include <optional>
#include <string>

#include "qpmod/linalg.hpp"

namespace qpmod {

// Element of gl(m+1|n); indices 0..m are even, m+1..m+n odd.
class GlMatrix {
public:
    GlMatrix(int m, int n) : m_(m), n_(n), mat_(m + n + 1, m + n + 1) {}
    static GlMatrix elementary(int m, int n, int a, int b);

    int m() const { return m_; }
    int n() const { return n_; }
    int dim() const { return m_ + n_ + 1; }
    int index_parity(int a) const { return a > m_ ? 1 : 0; }
    int entry_parity(int a, int b) const { return index_parity(a) ^ index_parity(b); }

    Scalar& at(int a, int b) { return mat_.at(a, b); }
    const Scalar& at(int a, int b) const { return mat_.at(a, b); }
    const Matrix& matrix() const { return mat_; }

    bool is_zero() const { return mat_.is_zero(); }
    std::optional<int> parity() const;
    GlMatrix parity_part(int p) const;
    Scalar supertrace() const;

    GlMatrix& operator+=(const GlMatrix& o);
    GlMatrix& operator-=(const GlMatrix& o);
    GlMatrix& operator*=(const Scalar& c);
    friend GlMatrix operator+(GlMatrix a, const GlMatrix& b) { return a += b; }
    friend GlMatrix operator-(GlMatrix a, const GlMatrix& b) { return a -= b; }
    friend GlMatrix operator*(GlMatrix a, const Scalar& c) { return a *= c; }
    friend GlMatrix operator*(const Scalar& c, GlMatrix a) { return a *= c; }
    friend bool operator==(const GlMatrix& a, const GlMatrix& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.mat_ == b.mat_;
    }

    // "E_1_0", "2*E_0_0-E_2_2", "0"
    std::string str() const;

    friend GlMatrix gl_bracket(const GlMatrix& x, const GlMatrix& y);

private:
    void check_same(const GlMatrix& o) const;

    int m_;
    int n_;
    Matrix mat_;
};

GlMatrix gl_bracket(const GlMatrix& x, const GlMatrix& y);

}  // namespace qpmod
