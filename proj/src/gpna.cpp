#include "scl/gpna.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

#include "scl/model.hpp"
#include "scl/projection.hpp"

namespace scl {

void SolverOptions::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    if (!(epsilon_gate > 0.0)) throw std::invalid_argument("epsilon_gate must be > 0");
    if (!(epsilon_stop > 0.0)) throw std::invalid_argument("epsilon_stop must be > 0");
    if (!(alpha0 > 0.0) || alpha0 > 1.0) throw std::invalid_argument("alpha0 must be in (0, 1]");
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw std::invalid_argument("gamma must be in (0, 1)");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (max_backtracks < 0) throw std::invalid_argument("max_backtracks must be >= 0");
}

const char* to_string(StepKind step) {
    switch (step) {
        case StepKind::GradientOnly: return "gradient";
        case StepKind::GradientPlusNewton: return "gradient+newton";
        case StepKind::NewtonRejected: return "newton_rejected";
    }
    return "?";
}

const char* to_string(GateCondition gate) {
    switch (gate) {
        case GateCondition::None: return "none";
        case GateCondition::Cond1: return "cond1";
        case GateCondition::Cond2: return "cond2";
        case GateCondition::Cond3: return "cond3";
        case GateCondition::Cond4: return "cond4";
    }
    return "?";
}

ArmijoResult armijo_step(const ProblemData& data, const WeightConfig& w,
                         const Iterate& beta_k, const Vector& grad, double f_k,
                         const SparsityBudget& budget, const SolverOptions& opts) {
    const Vector base = beta_k.stacked();
    double alpha = opts.alpha0;
    double violation = 0.0;
    for (int q = 0; q <= opts.max_backtracks; ++q, alpha *= opts.gamma) {
        Iterate cand = project_pair(base - alpha * grad, data.p1(), budget);
        const double f_cand = objective(data, w, cand);
        const double displacement =
            (cand.beta1() - beta_k.beta1()).squaredNorm() +
            (cand.beta2() - beta_k.beta2()).squaredNorm();
        const double bound = f_k - 0.5 * opts.sigma * displacement;
        if (f_cand <= bound) return {alpha, std::move(cand), q, f_cand};
        violation = f_cand - bound;
    }
    throw line_search_error(opts.max_backtracks, violation);
}

GateCondition newton_gate(const Vector& grad_at_u, const Iterate& beta_k,
                          const Iterate& u_k, double epsilon_gate) {
    const bool same1 = beta_k.support1() == u_k.support1();
    const bool same2 = beta_k.support2() == u_k.support2();
    if (same1 && same2) return GateCondition::Cond1;
    const double g1 = grad_at_u.head(u_k.p1()).norm();
    const double g2 = grad_at_u.tail(u_k.p2()).norm();
    if (g1 < epsilon_gate && same2) return GateCondition::Cond2;
    if (g2 < epsilon_gate && same1) return GateCondition::Cond3;
    if (g1 < epsilon_gate && g2 < epsilon_gate) return GateCondition::Cond4;
    return GateCondition::None;
}

std::optional<Iterate> newton_step(const ProblemData& data, const WeightConfig& w,
                                   const Iterate& u_k, const SparsityBudget& budget) {
    (void)budget;  // feasibility is inherited: the step stays inside Gamma(u_k)
    const IndexSet support = u_k.stacked_support();
    if (support.empty()) return u_k;

    const Matrix H = restricted_hessian(data, w, u_k, support);
    const Vector g = gradient(data, w, u_k);
    Vector rhs(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) rhs[static_cast<Index>(i)] = -g[support[i]];

    Eigen::LDLT<Matrix> ldlt(H);
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    const Vector d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (!(dmax > 0.0) || d.minCoeff() <= 1e-12 * dmax) return std::nullopt;

    const Vector delta = ldlt.solve(rhs);
    if (!delta.allFinite()) return std::nullopt;
    // Guard against an untrustworthy solve near singularity.
    const double resid = (H * delta - rhs).lpNorm<Eigen::Infinity>();
    if (resid > 1e-8 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) return std::nullopt;

    Vector v = u_k.stacked();
    for (std::size_t i = 0; i < support.size(); ++i)
        v[support[i]] += delta[static_cast<Index>(i)];
    return Iterate::from_stacked(v, data.p1());
}

bool newton_accept(const ProblemData& data, const WeightConfig& w,
                   const Iterate& u_k, const Iterate& v_k, double sigma) {
    const double f_u = objective(data, w, u_k);
    const double f_v = objective(data, w, v_k);
    const double displacement = (v_k.beta1() - u_k.beta1()).squaredNorm() +
                                (v_k.beta2() - u_k.beta2()).squaredNorm();
    return f_v <= f_u - 0.5 * sigma * displacement;
}

SolverReport solve(const ProblemData& data, const WeightConfig& w,
                   const SparsityBudget& budget, const SolverOptions& opts,
                   const std::optional<Iterate>& init) {
    data.validate();
    w.validate();
    budget.validate(data.p1(), data.p2());
    opts.validate();

    Iterate beta = init.value_or(Iterate::zero(data.p1(), data.p2()));
    if (beta.p1() != data.p1() || beta.p2() != data.p2())
        throw std::invalid_argument("initial point dimensions do not match data");
    if (!beta.feasible(budget))
        throw std::invalid_argument("initial point violates the sparsity budget");

    SolverReport report;
    if (opts.record_iterates) report.iterates.push_back(beta);
    double f_beta = objective(data, w, beta);
    double tol = std::numeric_limits<double>::infinity();

    for (int k = 0; k < opts.max_iter; ++k) {
        const Vector grad = gradient(data, w, beta);
        ArmijoResult gp = armijo_step(data, w, beta, grad, f_beta, budget, opts);

        Iterate next = gp.u;
        double f_next = gp.f_u;
        const Vector grad_u = gradient(data, w, gp.u);
        const GateCondition gate = newton_gate(grad_u, beta, gp.u, opts.epsilon_gate);
        StepKind step = StepKind::GradientOnly;
        if (gate != GateCondition::None) {
            std::optional<Iterate> v = newton_step(data, w, gp.u, budget);
            if (v) {
                const double f_v = objective(data, w, *v);
                const double displacement = (v->beta1() - gp.u.beta1()).squaredNorm() +
                                            (v->beta2() - gp.u.beta2()).squaredNorm();
                if (f_v <= gp.f_u - 0.5 * opts.sigma * displacement) {
                    next = std::move(*v);
                    f_next = f_v;
                    step = StepKind::GradientPlusNewton;
                } else {
                    step = StepKind::NewtonRejected;
                }
            } else {
                step = StepKind::NewtonRejected;
            }
        }

        // Gamma_k = Gamma(u^k); beta^{k+1} is supported inside it either way.
        IndexSet gamma_k = gp.u.stacked_support();
        const Vector grad_next =
            step == StepKind::GradientPlusNewton ? gradient(data, w, next) : grad_u;
        if (gamma_k.empty()) {
            tol = grad_next.norm();  // degenerate support: whole gradient
        } else {
            double sq = 0.0;
            for (Index i : gamma_k) sq += grad_next[i] * grad_next[i];
            tol = std::sqrt(sq);
        }

        IterationRecord rec;
        rec.k = k;
        rec.objective = f_next;
        rec.alpha = gp.alpha;
        rec.q = gp.q;
        rec.step = step;
        rec.gate = gate;
        rec.tol = tol;
        rec.support = std::move(gamma_k);
        rec.step_norm = std::sqrt((next.beta1() - beta.beta1()).squaredNorm() +
                                  (next.beta2() - beta.beta2()).squaredNorm());
        report.trace.push_back(std::move(rec));

        beta = std::move(next);
        f_beta = f_next;
        if (opts.record_iterates) report.iterates.push_back(beta);

        if (tol <= opts.epsilon_stop) {
            report.termination = Termination::TolReached;
            report.solution = std::move(beta);
            report.final_tol = tol;
            return report;
        }
    }

    report.termination = Termination::MaxIter;
    report.solution = std::move(beta);
    report.final_tol = tol;
    return report;
}

}  // namespace scl
