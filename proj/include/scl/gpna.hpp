#pragma once

#include <optional>
#include <vector>

#include "scl/types.hpp"

namespace scl {

struct SolverOptions {
    double sigma = 1e-4;         // descent coefficient
    double epsilon_gate = 1e-3;  // Newton gate tolerance on gradient blocks
    double epsilon_stop = 1e-4;  // stopping tolerance on tol_k
    double alpha0 = 1.0;         // initial step size
    double gamma = 0.5;          // backtracking factor
    int max_iter = 1000;
    int max_backtracks = 50;
    std::uint64_t seed = 0;      // recorded in reports; the solve itself is deterministic
    bool record_iterates = false;

    void validate() const;
};

enum class StepKind { GradientOnly, GradientPlusNewton, NewtonRejected };
enum class GateCondition { None, Cond1, Cond2, Cond3, Cond4 };

const char* to_string(StepKind step);
const char* to_string(GateCondition gate);

struct IterationRecord {
    int k = 0;
    double objective = 0.0;  // f(beta^{k+1})
    double alpha = 0.0;      // accepted step size alpha0 * gamma^q
    int q = 0;               // backtrack count
    StepKind step = StepKind::GradientOnly;
    GateCondition gate = GateCondition::None;
    double tol = 0.0;        // ||(grad f(beta^{k+1}))_{Gamma_k}||
    IndexSet support;        // Gamma_k = Gamma(u^k), stacked indices
    double step_norm = 0.0;  // ||beta^{k+1} - beta^k||
};

enum class Termination { TolReached, MaxIter };

struct SolverReport {
    Iterate solution;
    std::vector<IterationRecord> trace;
    Termination termination = Termination::MaxIter;
    double final_tol = 0.0;
    std::vector<Iterate> iterates;  // beta^0 .. beta^K when record_iterates is set
};

/// Armijo-backtracked projected gradient step from beta_k. Returns the
/// accepted step size, the projected point u_k, and the backtrack count.
/// grad is the gradient at beta_k, f_k its objective value.
struct ArmijoResult {
    double alpha = 0.0;
    Iterate u;
    int q = 0;
    double f_u = 0.0;
};
ArmijoResult armijo_step(const ProblemData& data, const WeightConfig& w,
                         const Iterate& beta_k, const Vector& grad, double f_k,
                         const SparsityBudget& budget, const SolverOptions& opts);

/// Newton gate: first satisfied of the four support/small-gradient conditions,
/// in order Cond1..Cond4; None otherwise. Gradient blocks use Euclidean norms.
GateCondition newton_gate(const Vector& grad_at_u, const Iterate& beta_k,
                          const Iterate& u_k, double epsilon_gate);

/// Restricted Newton step on Gamma(u_k): solves
/// H_{Gamma Gamma} (v_Gamma - u_Gamma) = -(grad f(u_k))_Gamma with v zero off
/// the support. Returns absent when the factorization finds the restricted
/// Hessian singular (or the solve is numerically untrustworthy).
std::optional<Iterate> newton_step(const ProblemData& data, const WeightConfig& w,
                                   const Iterate& u_k, const SparsityBudget& budget);

/// Descent acceptance for the Newton candidate:
/// f(v_k) <= f(u_k) - (sigma/2) ||v_k - u_k||^2.
bool newton_accept(const ProblemData& data, const WeightConfig& w,
                   const Iterate& u_k, const Iterate& v_k, double sigma);

/// Full GPNA loop: projected gradient step with Armijo backtracking, gated
/// restricted Newton step with descent acceptance, termination on
/// tol_k <= epsilon_stop. The first iteration always executes. Default start
/// is beta^0 = 0.
SolverReport solve(const ProblemData& data, const WeightConfig& w,
                   const SparsityBudget& budget, const SolverOptions& opts = {},
                   const std::optional<Iterate>& init = std::nullopt);

}  // namespace scl
