#include "qpmod/gl_module.hpp"

#include "qpmod/monomial.hpp"

namespace qpmod {

GlModule::GlModule(int m, int n, std::vector<int> parities) : m_(m), n_(n), parities_(std::move(parities)) {
    if (m < 1 || n < 1) throw AlgebraError("gl module needs m, n >= 1");
    for (int p : parities_)
        if (p != 0 && p != 1) throw AlgebraError("parity entries must be 0 or 1");
    act_.assign(std::size_t(size() * size()), Matrix(dim(), dim()));
}

GlModule GlModule::natural(int m, int n) {
    std::vector<int> par(std::size_t(m + 1 + n), 0);
    for (int k = 1; k <= n; ++k) par[std::size_t(m + k)] = 1;
    GlModule omega(m, n, par);
    for (int a = 0; a < omega.size(); ++a)
        for (int b = 0; b < omega.size(); ++b) omega.act(a, b).at(a, b) = 1;
    return omega;
}

GlModule GlModule::zero(int m, int n, int dim, std::vector<int> parities) {
    if (parities.empty()) parities.assign(std::size_t(dim), 0);
    if (int(parities.size()) != dim) throw AlgebraError("parity vector length differs from dim");
    return GlModule(m, n, std::move(parities));
}

GlModule GlModule::supertrace(int m, int n, const Scalar& c) {
    GlModule omega(m, n, {0});
    for (int a = 0; a < omega.size(); ++a) omega.act(a, a).at(0, 0) = a > m ? -c : c;
    return omega;
}

GlModule GlModule::direct_sum(const GlModule& x, const GlModule& y) {
    if (x.m_ != y.m_ || x.n_ != y.n_) throw AlgebraError("direct sum of modules for different gl");
    std::vector<int> par = x.parities_;
    par.insert(par.end(), y.parities_.begin(), y.parities_.end());
    GlModule out(x.m_, x.n_, par);
    int dx = x.dim();
    for (int a = 0; a < out.size(); ++a)
        for (int b = 0; b < out.size(); ++b) {
            Matrix& t = out.act(a, b);
            for (int r = 0; r < dx; ++r)
                for (int c = 0; c < dx; ++c) t.at(r, c) = x.act(a, b).at(r, c);
            for (int r = 0; r < y.dim(); ++r)
                for (int c = 0; c < y.dim(); ++c) t.at(dx + r, dx + c) = y.act(a, b).at(r, c);
        }
    return out;
}

Matrix GlModule::act_of(const GlMatrix& x) const {
    if (x.m() != m_ || x.n() != n_) throw AlgebraError("gl element of the wrong size");
    Matrix out(dim(), dim());
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (!x.at(a, b).is_zero()) out += act(a, b) * x.at(a, b);
    return out;
}

Matrix super_commutator(const Matrix& x, int px, const Matrix& y, int py) {
    Matrix xy = x * y;
    Matrix yx = y * x;
    return (px & py) ? xy + yx : xy - yx;
}

std::string RepViolation::describe() const {
    if (c < 0)
        return "E_" + std::to_string(a) + "_" + std::to_string(b) + " does not have parity " +
               "matching its block";
    return "pair (E_" + std::to_string(a) + "_" + std::to_string(b) + ", E_" + std::to_string(c) + "_" +
           std::to_string(d) + ")";
}

RepReport rep_check(const GlModule& omega) {
    RepReport rep;
    int N = omega.size();
    auto par = [&](int a) { return a > omega.m() ? 1 : 0; };
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            const Matrix& t = omega.act(a, b);
            int p = par(a) ^ par(b);
            bool bad = false;
            for (int r = 0; r < omega.dim() && !bad; ++r)
                for (int c = 0; c < omega.dim(); ++c)
                    if (!t.at(r, c).is_zero() && (omega.parity(r) ^ omega.parity(c)) != p) {
                        bad = true;
                        break;
                    }
            if (bad) rep.violations.push_back({a, b, -1, -1});
        }
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) {
                    int p1 = par(a) ^ par(b);
                    int p2 = par(c) ^ par(d);
                    // [E_ab, E_cd] = delta_bc E_ad - (-1)^{p1 p2} delta_da E_cb
                    Matrix lhs(omega.dim(), omega.dim());
                    if (b == c) lhs += omega.act(a, d);
                    if (d == a) {
                        if (p1 & p2) lhs += omega.act(c, b);
                        else lhs -= omega.act(c, b);
                    }
                    Matrix rhs = super_commutator(omega.act(a, b), p1, omega.act(c, d), p2);
                    if (!(lhs == rhs)) rep.violations.push_back({a, b, c, d});
                }
    return rep;
}

namespace {

bool is_diagonal(const Matrix& r) {
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j)
            if (i != j && !r.at(i, j).is_zero()) return false;
    return true;
}

Matrix columns_to_matrix(const std::vector<std::vector<Scalar>>& cols, int dim) {
    Matrix b(dim, int(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < dim; ++i) b.at(i, int(j)) = cols[j][std::size_t(i)];
    return b;
}

}  // namespace

WeightReport weight_decompose(const GlModule& omega) {
    int N = omega.size();
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            if (!(omega.act(a, a) * omega.act(b, b) == omega.act(b, b) * omega.act(a, a)))
                throw NotDiagonalizable("diagonal actions E_" + std::to_string(a) + "_" + std::to_string(a) +
                                        " and E_" + std::to_string(b) + "_" + std::to_string(b) +
                                        " do not commute");
    std::vector<WeightSpace> spaces;
    WeightSpace all;
    for (int i = 0; i < omega.dim(); ++i) {
        std::vector<Scalar> e(std::size_t(omega.dim()));
        e[std::size_t(i)] = 1;
        all.basis.push_back(std::move(e));
    }
    if (omega.dim() > 0) spaces.push_back(std::move(all));
    for (int a = 0; a < N; ++a) {
        const Matrix& h = omega.act(a, a);
        std::vector<WeightSpace> next;
        for (auto& sp : spaces) {
            int k = int(sp.basis.size());
            Matrix B = columns_to_matrix(sp.basis, omega.dim());
            Matrix HB = h * B;
            Matrix R(k, k);
            for (int j = 0; j < k; ++j) {
                std::vector<Scalar> col(std::size_t(omega.dim()));
                for (int i = 0; i < omega.dim(); ++i) col[std::size_t(i)] = HB.at(i, j);
                auto x = solve(B, col);
                if (!x) throw NotDiagonalizable("weight space not invariant");
                for (int i = 0; i < k; ++i) R.at(i, j) = (*x)[std::size_t(i)];
            }
            std::vector<Scalar> eig;
            if (is_diagonal(R)) {
                for (int i = 0; i < k; ++i) {
                    bool seen = false;
                    for (const auto& e : eig) seen = seen || e == R.at(i, i);
                    if (!seen) eig.push_back(R.at(i, i));
                }
            } else {
                eig = gaussian_rational_roots(char_poly(R));
            }
            int found = 0;
            for (const auto& lambda : eig) {
                auto ker = nullspace(R - Matrix::identity(k) * lambda);
                if (ker.empty()) continue;
                WeightSpace ws;
                ws.weight = sp.weight;
                ws.weight.push_back(lambda);
                for (const auto& v : ker) ws.basis.push_back(B.apply(v));
                found += int(ker.size());
                next.push_back(std::move(ws));
            }
            if (found != k)
                throw NotDiagonalizable("E_" + std::to_string(a) + "_" + std::to_string(a) +
                                        " is not diagonalizable over the Gaussian rationals");
        }
        spaces = std::move(next);
    }
    WeightReport rep;
    rep.spaces = std::move(spaces);
    for (const auto& s : rep.spaces) rep.max_multiplicity = std::max(rep.max_multiplicity, int(s.basis.size()));
    return rep;
}

}  // namespace qpmod
