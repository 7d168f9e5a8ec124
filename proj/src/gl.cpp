#include "qpmod/gl.hpp"

#include <stdexcept>

#include "qpmod/monomial.hpp"

namespace qpmod {

GlMatrix GlMatrix::elementary(int m, int n, int a, int b) {
    GlMatrix e(m, n);
    if (a < 0 || b < 0 || a >= e.dim() || b >= e.dim())
        throw AlgebraError("elementary index out of range");
    e.at(a, b) = 1;
    return e;
}

void GlMatrix::check_same(const GlMatrix& o) const {
    if (m_ != o.m_ || n_ != o.n_) throw AlgebraError("gl dimension mismatch");
}

std::optional<int> GlMatrix::parity() const {
    std::optional<int> p;
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b) {
            if (at(a, b).is_zero()) continue;
            int q = entry_parity(a, b);
            if (p && *p != q) return std::nullopt;
            p = q;
        }
    return p;
}

GlMatrix GlMatrix::parity_part(int p) const {
    GlMatrix out(m_, n_);
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b)
            if (entry_parity(a, b) == p) out.at(a, b) = at(a, b);
    return out;
}

Scalar GlMatrix::supertrace() const {
    Scalar s;
    for (int a = 0; a < dim(); ++a) s += index_parity(a) ? -at(a, a) : at(a, a);
    return s;
}

GlMatrix& GlMatrix::operator+=(const GlMatrix& o) {
    check_same(o);
    mat_ += o.mat_;
    return *this;
}

GlMatrix& GlMatrix::operator-=(const GlMatrix& o) {
    check_same(o);
    mat_ -= o.mat_;
    return *this;
}

GlMatrix& GlMatrix::operator*=(const Scalar& c) {
    mat_ *= c;
    return *this;
}

std::string GlMatrix::str() const {
    std::string out;
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b) {
            const Scalar& c = at(a, b);
            if (c.is_zero()) continue;
            std::string e = "E_" + std::to_string(a) + "_" + std::to_string(b);
            std::string term;
            if (c.is_one()) term = e;
            else if (c == Scalar(-1)) term = "-" + e;
            else if (c.is_real() || c.re() == 0) term = c.str() + "*" + e;
            else term = "(" + c.str() + ")*" + e;
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
    return out.empty() ? "0" : out;
}

GlMatrix gl_bracket(const GlMatrix& x, const GlMatrix& y) {
    x.check_same(y);
    GlMatrix out(x.m(), x.n());
    for (int px = 0; px < 2; ++px) {
        GlMatrix xp = x.parity_part(px);
        if (xp.is_zero()) continue;
        for (int py = 0; py < 2; ++py) {
            GlMatrix yp = y.parity_part(py);
            if (yp.is_zero()) continue;
            Matrix t = xp.matrix() * yp.matrix();
            Matrix u = yp.matrix() * xp.matrix();
            GlMatrix term(x.m(), x.n());
            term.mat_ = (px & py) ? t + u : t - u;
            out += term;
        }
    }
    return out;
}

}  // namespace qpmod
