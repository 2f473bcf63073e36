#include "scl/oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>

#include "scl/model.hpp"

namespace scl {
namespace oracle {

namespace {

constexpr double kEnumerationCap = 1e6;

double n_choose_k(Index n, Index k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (Index i = 1; i <= k; ++i) {
        r *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (r > 1e18) return 1e18;
    }
    return r;
}

IndexSet first_combination(Index k) {
    IndexSet c(k);
    std::iota(c.begin(), c.end(), Index{0});
    return c;
}

// Lexicographic successor of a k-combination of [0, p); false when exhausted.
bool next_combination(IndexSet& c, Index p) {
    const Index k = static_cast<Index>(c.size());
    for (Index i = k - 1; i >= 0; --i) {
        if (c[i] < p - k + i) {
            ++c[i];
            for (Index j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

struct RestrictedSolve {
    Vector beta_t;      // coefficients on the support
    double value = 0.0;
    bool converged = false;
};

// Minimum of the restricted quadratic: Q_TT beta_T = -(grad f(0))_T.
RestrictedSolve solve_linear(const ProblemData& data, const WeightConfig& w,
                             const Vector& grad0, const IndexSet& support) {
    RestrictedSolve out;
    const Matrix Q = restricted_hessian(data, w, Vector::Zero(data.p1() + data.p2()), support);
    Vector rhs(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) rhs[static_cast<Index>(i)] = -grad0[support[i]];

    Eigen::LDLT<Matrix> ldlt(Q);
    Vector beta_t = ldlt.solve(rhs);
    if (!beta_t.allFinite() ||
        (Q * beta_t - rhs).lpNorm<Eigen::Infinity>() >
            1e-8 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) {
        // Singular normal equations: try the pseudo-inverse; an inconsistent
        // system means the quadratic is unbounded below on this support.
        Eigen::JacobiSVD<Matrix> svd(Q, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-12);
        beta_t = svd.solve(rhs);
        if (!beta_t.allFinite() ||
            (Q * beta_t - rhs).lpNorm<Eigen::Infinity>() >
                1e-8 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>()))
            return out;
    }
    Vector full = Vector::Zero(data.p1() + data.p2());
    for (std::size_t i = 0; i < support.size(); ++i) full[support[i]] = beta_t[static_cast<Index>(i)];
    out.beta_t = std::move(beta_t);
    out.value = objective(data, w, full);
    out.converged = true;
    return out;
}

// Damped Newton on the restricted logistic subproblem, gradient tolerance
// 1e-10, at most 200 iterations; non-convergence marks the support divergent.
RestrictedSolve solve_logistic(const ProblemData& data, const WeightConfig& w,
                               const IndexSet& support) {
    RestrictedSolve out;
    const Index p = data.p1() + data.p2();
    Vector full = Vector::Zero(p);
    double f = objective(data, w, full);
    for (int iter = 0; iter < 200; ++iter) {
        const Vector g = gradient(data, w, full);
        Vector g_t(support.size());
        for (std::size_t i = 0; i < support.size(); ++i) g_t[static_cast<Index>(i)] = g[support[i]];
        if (g_t.lpNorm<Eigen::Infinity>() <= 1e-10) {
            out.beta_t.resize(support.size());
            for (std::size_t i = 0; i < support.size(); ++i)
                out.beta_t[static_cast<Index>(i)] = full[support[i]];
            out.value = f;
            out.converged = true;
            return out;
        }
        const Matrix H = restricted_hessian(data, w, full, support);
        Eigen::LDLT<Matrix> ldlt(H);
        Vector dir = ldlt.solve(-g_t);
        if (!dir.allFinite()) return out;
        const double slope = g_t.dot(dir);
        if (!(slope < 0.0)) return out;

        double t = 1.0;
        bool stepped = false;
        for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
            Vector cand = full;
            for (std::size_t i = 0; i < support.size(); ++i)
                cand[support[i]] += t * dir[static_cast<Index>(i)];
            const double f_cand = objective(data, w, cand);
            if (f_cand <= f + 1e-4 * t * slope) {
                full = std::move(cand);
                f = f_cand;
                stepped = true;
                break;
            }
        }
        if (!stepped) return out;
        if (full.lpNorm<Eigen::Infinity>() > 1e10) return out;  // separable direction
    }
    return out;
}

}  // namespace

GlobalSolution global_solve_bruteforce(const ProblemData& data, const WeightConfig& w,
                                       const SparsityBudget& budget) {
    data.validate();
    w.validate();
    budget.validate(data.p1(), data.p2());
    const double combos = n_choose_k(data.p1(), budget.s1) * n_choose_k(data.p2(), budget.s2);
    if (combos > kEnumerationCap)
        throw std::invalid_argument("global_solve_bruteforce: instance too large to enumerate");

    const Vector grad0 = data.loss == Loss::Linear
                             ? gradient(data, w, Vector::Zero(data.p1() + data.p2()))
                             : Vector();

    GlobalSolution best;
    best.value = std::numeric_limits<double>::infinity();

    IndexSet t1 = first_combination(budget.s1);
    do {
        IndexSet t2 = first_combination(budget.s2);
        do {
            IndexSet support = t1;
            support.reserve(t1.size() + t2.size());
            for (Index i : t2) support.push_back(i + data.p1());

            RestrictedSolve sub = data.loss == Loss::Linear
                                      ? solve_linear(data, w, grad0, support)
                                      : solve_logistic(data, w, support);
            ++best.supports_tried;
            if (!sub.converged) {
                ++best.supports_divergent;
                continue;
            }
            if (sub.value < best.value) {
                best.value = sub.value;
                Vector full = Vector::Zero(data.p1() + data.p2());
                for (std::size_t i = 0; i < support.size(); ++i)
                    full[support[i]] = sub.beta_t[static_cast<Index>(i)];
                best.beta = Iterate::from_stacked(full, data.p1());
            }
        } while (next_combination(t2, data.p2()));
    } while (next_combination(t1, data.p1()));

    if (!std::isfinite(best.value))
        throw numeric_error("global_solve_bruteforce: every support diverged");
    return best;
}

ConvexityConstant restricted_convexity_constant(const ProblemData& data, const WeightConfig& w,
                                                const SparsityBudget& budget) {
    data.validate();
    w.validate();
    budget.validate(data.p1(), data.p2());
    const Index p = data.p1() + data.p2();
    if (p > 16)
        throw std::invalid_argument("restricted_convexity_constant: p1 + p2 must be <= 16");

    // Curvature lower-bound matrix: the coupling part (c/n) [X -Z]^T [X -Z]
    // for the logistic loss, the full constant Hessian Q for the linear loss.
    Matrix M(p, p);
    if (data.loss == Loss::Logistic) {
        Matrix W(data.n(), p);
        W << data.X, -data.Z;
        M = (w.c / static_cast<double>(data.n())) * (W.transpose() * W);
    } else {
        IndexSet full(p);
        std::iota(full.begin(), full.end(), Index{0});
        M = restricted_hessian(data, w, Vector::Zero(p), full);
    }

    // Eigenvalue interlacing: enlarging T can only lower lambda_min, so the
    // minimum over |T| <= s is attained at |T| = s.
    const Index s = std::min<Index>(budget.aggregate(), p);
    ConvexityConstant out;
    out.l_f = std::numeric_limits<double>::infinity();
    IndexSet t = first_combination(s);
    do {
        Matrix sub(s, s);
        for (Index r = 0; r < s; ++r)
            for (Index c = 0; c < s; ++c) sub(r, c) = M(t[r], t[c]);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sub, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues().minCoeff();
        if (lmin < out.l_f) {
            out.l_f = lmin;
            out.minimizing_support = t;
        }
    } while (next_combination(t, p));
    return out;
}

bool is_s_regular(const Matrix& m, Index s) {
    if (s < 1 || s > m.cols()) throw std::invalid_argument("is_s_regular: need 1 <= s <= p");
    if (n_choose_k(m.cols(), s) > kEnumerationCap)
        throw std::invalid_argument("is_s_regular: too many column subsets to enumerate");
    if (s > m.rows()) return false;  // rank is at most n

    IndexSet t = first_combination(s);
    do {
        Matrix sub(m.rows(), s);
        for (Index j = 0; j < s; ++j) sub.col(j) = m.col(t[j]);
        Eigen::JacobiSVD<Matrix> svd(sub);
        const auto& sv = svd.singularValues();
        if (sv[0] == 0.0 || sv[sv.size() - 1] <= 1e-10 * sv[0]) return false;
    } while (next_combination(t, m.cols()));
    return true;
}

double dense_top_eigenvalue(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
}

Matrix dense_smoothness_matrix(const ProblemData& data, const WeightConfig& w) {
    const bool logistic = data.loss == Loss::Logistic;
    const double ca = (logistic ? w.a / 4.0 : w.a) + w.c;
    const double cb = (logistic ? w.b / 4.0 : w.b) + w.c;
    const double inv_n = 1.0 / static_cast<double>(data.n());
    const Index p1 = data.p1(), p2 = data.p2();
    Matrix M(p1 + p2, p1 + p2);
    M.topLeftCorner(p1, p1) = ca * inv_n * (data.X.transpose() * data.X);
    M.topRightCorner(p1, p2) = -w.c * inv_n * (data.X.transpose() * data.Z);
    M.bottomLeftCorner(p2, p1) = M.topRightCorner(p1, p2).transpose();
    M.bottomRightCorner(p2, p2) = cb * inv_n * (data.Z.transpose() * data.Z);
    return M;
}

Matrix dense_hessian(const ProblemData& data, const WeightConfig& w, const Iterate& beta) {
    IndexSet full(data.p1() + data.p2());
    std::iota(full.begin(), full.end(), Index{0});
    return restricted_hessian(data, w, beta, full);
}

}  // namespace oracle
}  // namespace scl
