#pragma once

#include <limits>

#include "qpmod/superpoly.hpp"

namespace qpmod {

inline constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

// Polynomial in the shifted variables u_i = t_i - 1 (non-negative exponents) and zeta.
using ShiftedPoly = SparseTerms<Monomial>;

// total degree in the shifted variables plus Grassmann degree
int shifted_degree(const Monomial& mono);

// Largest l with f in S^l; kInfiniteDegree for f = 0.
int filt_degree(const SuperPoly& f);

// Exact rewrite of t^N f in shifted variables, N clearing all negative exponents.
ShiftedPoly cleared_shift(const SuperPoly& f);

// Taylor data of f at t = 1 in shifted variables, keeping total degree < order.
// Negative exponents are handled with generalized binomial coefficients.
ShiftedPoly taylor_truncated(const SuperPoly& f, int order);

// Back from shifted variables to t.
SuperPoly unshift(const ShiftedPoly& u, Signature sig);

// For f in S^k: a polynomial in (t_i - 1) and zeta lying in (S+)^k with
// f - result in S^{kprime}.
SuperPoly plus_part(const SuperPoly& f, int k, int kprime);

Scalar binomial(int e, int p);

}  // namespace qpmod
