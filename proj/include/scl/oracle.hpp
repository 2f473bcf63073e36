#pragma once

#include "scl/types.hpp"

namespace scl {
namespace oracle {

// Brute-force reference implementations for tests and desk-scale acceptance.
// Every routine refuses instances beyond its enumeration cap.

struct GlobalSolution {
    Iterate beta;
    double value = 0.0;
    long supports_tried = 0;
    long supports_divergent = 0;  // logistic subproblems that failed to converge
};

/// Global minimizer by enumerating every support pair |T1| = s1, |T2| = s2 and
/// solving the restricted convex subproblem (normal equations for the linear
/// loss, damped Newton to 1e-10 for the logistic loss).
/// Guard: C(p1,s1) * C(p2,s2) <= 1e6.
GlobalSolution global_solve_bruteforce(const ProblemData& data, const WeightConfig& w,
                                       const SparsityBudget& budget);

struct ConvexityConstant {
    double l_f = 0.0;
    IndexSet minimizing_support;
};

/// Exact restricted strong convexity constant: min over supports |T| <= s1+s2
/// of the smallest eigenvalue of the curvature lower-bound matrix on T.
/// Guard: p1 + p2 <= 16.
ConvexityConstant restricted_convexity_constant(const ProblemData& data,
                                                const WeightConfig& w,
                                                const SparsityBudget& budget);

/// True iff every s-column submatrix of `m` has full column rank (singular
/// value threshold 1e-10 * sigma_max per submatrix). Guard: C(p,s) <= 1e6.
bool is_s_regular(const Matrix& m, Index s);

/// Dense lambda_max of a symmetric matrix (eigensolve); the independent
/// check for the power-iteration smoothness constant.
double dense_top_eigenvalue(const Matrix& sym);

/// Dense curvature-bound block matrix whose top eigenvalue is L_f.
Matrix dense_smoothness_matrix(const ProblemData& data, const WeightConfig& w);

/// Dense Hessian at beta (desk scale only).
Matrix dense_hessian(const ProblemData& data, const WeightConfig& w, const Iterate& beta);

}  // namespace oracle
}  // namespace scl
