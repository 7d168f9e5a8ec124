#include "qpmod/linalg.hpp"

#include <stdexcept>

namespace qpmod {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& c) {
    for (auto& s : data_)
        if (!s.is_zero()) s *= c;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
        for (int k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.at(r, k);
            if (x.is_zero()) continue;
            for (int c = 0; c < b.cols_; ++c)
                if (!b.at(k, c).is_zero()) out.at(r, c) += x * b.at(k, c);
        }
    return out;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<Scalar> out(rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(Matrix& a, int ncols) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < ncols && row < a.rows(); ++col) {
        int sel = -1;
        for (int r = row; r < a.rows(); ++r)
            if (!a.at(r, col).is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int c = 0; c < a.cols(); ++c) std::swap(a.at(sel, c), a.at(row, c));
        Scalar inv = Scalar(1) / a.at(row, col);
        for (int c = 0; c < a.cols(); ++c)
            if (!a.at(row, c).is_zero()) a.at(row, c) *= inv;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            Scalar f = a.at(r, col);
            for (int c = 0; c < a.cols(); ++c)
                if (!a.at(row, c).is_zero()) a.at(r, c) -= f * a.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(Matrix a) { return int(rref(a, a.cols()).size()); }

std::vector<std::vector<Scalar>> nullspace(Matrix a) {
    auto pivots = rref(a, a.cols());
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(a.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.at(int(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve(Matrix a, std::vector<Scalar> b) {
    if (int(b.size()) != a.rows()) throw std::invalid_argument("solve size mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto pivots = rref(aug, a.cols());
    for (int r = int(pivots.size()); r < aug.rows(); ++r)
        if (!aug.at(r, a.cols()).is_zero()) return std::nullopt;
    std::vector<Scalar> x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(int(r), a.cols());
    return x;
}

int sparse_rank(const std::vector<std::map<long, Scalar>>& columns) {
    std::map<long, std::map<long, Scalar>> pivots;  // leading row -> reduced column
    int rk = 0;
    for (auto v : columns) {
        while (!v.empty()) {
            auto lead = v.begin();
            auto it = pivots.find(lead->first);
            if (it == pivots.end()) {
                pivots.emplace(lead->first, std::move(v));
                ++rk;
                break;
            }
            Scalar f = lead->second / it->second.at(lead->first);
            for (const auto& [row, val] : it->second) {
                auto [pos, inserted] = v.try_emplace(row, Scalar(0));
                pos->second -= f * val;
                if (pos->second.is_zero()) v.erase(pos);
            }
        }
    }
    return rk;
}

std::vector<Scalar> char_poly(const Matrix& a) {
    // Faddeev-LeVerrier
    int n = a.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = 1;
    Matrix mk(n, n);
    for (int k = 1; k <= n; ++k) {
        mk = a * mk + Matrix::identity(n) * c[n - k + 1];
        Matrix am = a * mk;
        Scalar tr;
        for (int i = 0; i < n; ++i) tr += am.at(i, i);
        c[n - k] = -tr / Scalar(k);
    }
    return c;
}

namespace {

Scalar horner(const std::vector<Scalar>& c, const Scalar& x) {
    Scalar v;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

}  // namespace

std::vector<Scalar> gaussian_rational_roots(std::vector<Scalar> c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.size() <= 1) return {};
    std::vector<Scalar> roots;
    // strip the root 0
    std::size_t low = 0;
    while (c[low].is_zero()) ++low;
    if (low > 0) {
        roots.push_back(Scalar(0));
        c.erase(c.begin(), c.begin() + long(low));
    }
    if (c.size() <= 1) return roots;
    Scalar lead = c.back();
    for (auto& s : c) s /= lead;
    int n = int(c.size()) - 1;
    mpz_class den = 1;
    for (const auto& s : c) {
        den = lcm(den, s.re().get_den());
        den = lcm(den, s.im().get_den());
    }
    // q(y) = den^n p(y/den) is monic over Z[i]; roots are Gaussian integers dividing q(0)
    std::vector<Scalar> q(c.size());
    mpz_class power = 1;
    for (int k = n; k >= 0; --k) {
        q[k] = c[k] * Scalar(mpq_class(power));
        power *= den;
    }
    mpz_class norm = q[0].re().get_num() * q[0].re().get_num() + q[0].im().get_num() * q[0].im().get_num();
    if (norm > mpz_class("1000000000000"))
        throw std::runtime_error("eigenvalue search bound exceeded");
    unsigned long nv = norm.get_ui();
    for (unsigned long d = 1; d * d <= nv; ++d) {
        if (nv % d) continue;
        for (unsigned long div : {d, nv / d}) {
            for (long x = 0; (unsigned long)(x * x) <= div; ++x) {
                unsigned long rest = div - (unsigned long)(x * x);
                mpz_class root;
                mpz_sqrt(root.get_mpz_t(), mpz_class(rest).get_mpz_t());
                if (root * root != rest) continue;
                long y = root.get_si();
                for (int sx : {1, -1})
                    for (int sy : {1, -1}) {
                        if ((x == 0 && sx < 0) || (y == 0 && sy < 0)) continue;
                        Scalar cand(sx * x, sy * y);
                        if (!horner(q, cand).is_zero()) continue;
                        Scalar r = cand / Scalar(mpq_class(den));
                        bool seen = false;
                        for (const auto& e : roots) seen = seen || e == r;
                        if (!seen) roots.push_back(r);
                    }
            }
            if (d * d == nv) break;
        }
    }
    return roots;
}

}  // namespace qpmod
