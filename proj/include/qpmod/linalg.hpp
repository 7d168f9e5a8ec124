#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qpmod/scalar.hpp"

namespace qpmod {

// Dense exact matrix over the Gaussian rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Scalar& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    bool is_zero() const;
    Matrix transpose() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& c);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& c) { return a *= c; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

int rank(Matrix a);
// basis of {v : a v = 0}
std::vector<std::vector<Scalar>> nullspace(Matrix a);
// some x with a x = b, nullopt if inconsistent
std::optional<std::vector<Scalar>> solve(Matrix a, std::vector<Scalar> b);

// Rank of a sparse column set; each column maps row key -> value.
int sparse_rank(const std::vector<std::map<long, Scalar>>& columns);

// Coefficients c_0..c_n of det(x I - a), c_n = 1.
std::vector<Scalar> char_poly(const Matrix& a);
// Distinct roots in Q(i) of a polynomial given by coefficients (low to high).
// Throws if the search bound is exceeded.
std::vector<Scalar> gaussian_rational_roots(std::vector<Scalar> coeffs);

}  // namespace qpmod
