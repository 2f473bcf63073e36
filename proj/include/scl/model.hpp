#pragma once

#include "scl/types.hpp"

namespace scl {

/// log(1 + exp(t)) without overflow: max(t, 0) + log1p(exp(-|t|)).
double log1pexp(double t);

/// Logistic sigmoid, branch-wise so exp never overflows.
double sigmoid(double t);

/// f(beta) = (1/n) [ a l(beta1; X, y) + b l(beta2; Z, y)
///                   + (c/2) ||X beta1 - Z beta2||^2 ].
double objective(const ProblemData& data, const WeightConfig& w, const Iterate& beta);

/// Same objective on a stacked coefficient vector of length p1 + p2.
double objective(const ProblemData& data, const WeightConfig& w, const Vector& stacked);

/// Stacked gradient (d/d beta1; d/d beta2), length p1 + p2.
Vector gradient(const ProblemData& data, const WeightConfig& w, const Iterate& beta);
Vector gradient(const ProblemData& data, const WeightConfig& w, const Vector& stacked);

/// Principal submatrix of the Hessian on `support` (indices into the stacked
/// vector, strictly ascending). Assembled column-wise; the full (p1+p2)^2
/// matrix is never formed.
Matrix restricted_hessian(const ProblemData& data, const WeightConfig& w,
                          const Iterate& beta, const IndexSet& support);
Matrix restricted_hessian(const ProblemData& data, const WeightConfig& w,
                          const Vector& stacked, const IndexSet& support);

/// Strong-smoothness constant L_f: the top eigenvalue of the curvature bound
/// block matrix, by power iteration on the implicit operator (products
/// through X and Z only). Relative accuracy ~1e-6.
double smoothness_constant(const ProblemData& data, const WeightConfig& w);

/// Hessian Lipschitz constant C_f for the logistic loss; 0 for the linear
/// loss (constant Hessian).
double lipschitz_hessian_constant(const ProblemData& data, const WeightConfig& w);

namespace detail {
/// lambda_max of M^T M via power iteration on v -> M^T (M v).
double top_eigenvalue_gram(const Matrix& M);
}  // namespace detail

}  // namespace scl
