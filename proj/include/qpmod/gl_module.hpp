#pragma once

#include <string>
#include <vector>

#include "qpmod/gl.hpp"
#include "qpmod/monomial.hpp"

namespace qpmod {

// Finite-dimensional gl(m+1|n)-module given by the action of every E_{a,b}.
class GlModule {
public:
    GlModule(int m, int n, std::vector<int> parities);

    static GlModule natural(int m, int n);
    static GlModule zero(int m, int n, int dim, std::vector<int> parities = {});
    // one-dimensional even module E_{a,b} -> c * delta_{ab} * (-1)^{|a|}
    static GlModule supertrace(int m, int n, const Scalar& c);
    static GlModule direct_sum(const GlModule& x, const GlModule& y);

    int m() const { return m_; }
    int n() const { return n_; }
    int dim() const { return int(parities_.size()); }
    int size() const { return m_ + n_ + 1; }  // matrix size of gl(m+1|n)
    const std::vector<int>& parities() const { return parities_; }
    int parity(int v) const { return parities_.at(std::size_t(v)); }

    const Matrix& act(int a, int b) const { return act_.at(std::size_t(a * size() + b)); }
    Matrix& act(int a, int b) { return act_.at(std::size_t(a * size() + b)); }
    Matrix act_of(const GlMatrix& x) const;

private:
    int m_;
    int n_;
    std::vector<int> parities_;
    std::vector<Matrix> act_;
};

// Supercommutator of homogeneous operators.
Matrix super_commutator(const Matrix& x, int px, const Matrix& y, int py);

struct RepViolation {
    int a, b, c, d;  // pair (E_{a,b}, E_{c,d}); c = d = -1 marks a parity violation of E_{a,b}
    std::string describe() const;
};

struct RepReport {
    std::vector<RepViolation> violations;
    bool ok() const { return violations.empty(); }
};

RepReport rep_check(const GlModule& omega);

struct WeightSpace {
    std::vector<Scalar> weight;  // eigenvalue of E_{a,a}, a = 0..m+n
    std::vector<std::vector<Scalar>> basis;
};

struct WeightReport {
    std::vector<WeightSpace> spaces;
    int max_multiplicity = 0;
};

class NotDiagonalizable : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

WeightReport weight_decompose(const GlModule& omega);

}  // namespace qpmod
