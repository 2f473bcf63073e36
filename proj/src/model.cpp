#include "scl/model.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "scl/rng.hpp"

namespace scl {

double log1pexp(double t) {
    return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

namespace {

void check_dims(const ProblemData& data, Index q1, Index q2) {
    if (q1 != data.p1() || q2 != data.p2()) {
        std::ostringstream msg;
        msg << "coefficient dimensions (" << q1 << ", " << q2 << ") do not match data ("
            << data.p1() << ", " << data.p2() << ")";
        throw std::invalid_argument(msg.str());
    }
}

// Per-view loss evaluated on precomputed scores t = X beta.
double view_loss(Loss loss, const Vector& t, const Vector& y) {
    double sum = 0.0;
    if (loss == Loss::Logistic) {
        for (Index i = 0; i < t.size(); ++i) sum += log1pexp(t[i]) - y[i] * t[i];
    } else {
        for (Index i = 0; i < t.size(); ++i) {
            const double r = y[i] - t[i];
            sum += 0.5 * r * r;
        }
    }
    return sum;
}

// d/dt of the per-sample loss: sigma(t) - y (logistic) or t - y (linear).
Vector view_residual(Loss loss, const Vector& t, const Vector& y) {
    Vector r(t.size());
    if (loss == Loss::Logistic) {
        for (Index i = 0; i < t.size(); ++i) r[i] = sigmoid(t[i]) - y[i];
    } else {
        r = t - y;
    }
    return r;
}

double objective_scores(const ProblemData& data, const WeightConfig& w,
                        const Vector& t1, const Vector& t2) {
    const double n = static_cast<double>(data.n());
    const double couple = (t1 - t2).squaredNorm();
    return (w.a * view_loss(data.loss, t1, data.y) +
            w.b * view_loss(data.loss, t2, data.y) + 0.5 * w.c * couple) / n;
}

// Shared power iteration for symmetric PSD operators.
double power_iteration(Index dim, const std::function<Vector(const Vector&)>& apply,
                       const char* label) {
    constexpr double kTol = 1e-8;
    constexpr int kMaxIter = 5000;
    SplitMix64 rng(0xA11CEULL + static_cast<std::uint64_t>(dim));
    Vector x(dim);
    for (Index i = 0; i < dim; ++i) x[i] = rng.normal();
    x.normalize();
    double lambda = 0.0;
    for (int k = 0; k < kMaxIter; ++k) {
        Vector y = apply(x);
        const double next = x.dot(y);
        const double ny = y.norm();
        if (ny == 0.0) return 0.0;
        x = y / ny;
        const double change = std::abs(next - lambda);
        lambda = next;
        if (k > 0 && change <= kTol * std::max(1.0, std::abs(lambda))) return lambda;
    }
    std::ostringstream msg;
    msg << label << ": power iteration did not converge within " << kMaxIter
        << " iterations (last eigenvalue " << lambda << ")";
    throw numeric_error(msg.str());
}

}  // namespace

double objective(const ProblemData& data, const WeightConfig& w, const Iterate& beta) {
    check_dims(data, beta.p1(), beta.p2());
    w.validate();
    return objective_scores(data, w, data.X * beta.beta1(), data.Z * beta.beta2());
}

double objective(const ProblemData& data, const WeightConfig& w, const Vector& stacked) {
    if (stacked.size() != data.p1() + data.p2())
        throw std::invalid_argument("stacked coefficient length does not match data");
    w.validate();
    return objective_scores(data, w, data.X * stacked.head(data.p1()),
                            data.Z * stacked.tail(data.p2()));
}

namespace {

Vector gradient_impl(const ProblemData& data, const WeightConfig& w,
                     const Eigen::Ref<const Vector>& b1,
                     const Eigen::Ref<const Vector>& b2) {
    const double n = static_cast<double>(data.n());
    const Vector t1 = data.X * b1;
    const Vector t2 = data.Z * b2;
    const Vector couple = t1 - t2;
    Vector g(data.p1() + data.p2());
    g.head(data.p1()) =
        data.X.transpose() * (w.a * view_residual(data.loss, t1, data.y) + w.c * couple) / n;
    g.tail(data.p2()) =
        data.Z.transpose() * (w.b * view_residual(data.loss, t2, data.y) - w.c * couple) / n;
    return g;
}

}  // namespace

Vector gradient(const ProblemData& data, const WeightConfig& w, const Iterate& beta) {
    check_dims(data, beta.p1(), beta.p2());
    w.validate();
    return gradient_impl(data, w, beta.beta1(), beta.beta2());
}

Vector gradient(const ProblemData& data, const WeightConfig& w, const Vector& stacked) {
    if (stacked.size() != data.p1() + data.p2())
        throw std::invalid_argument("stacked coefficient length does not match data");
    w.validate();
    return gradient_impl(data, w, stacked.head(data.p1()), stacked.tail(data.p2()));
}

namespace {

Matrix restricted_hessian_impl(const ProblemData& data, const WeightConfig& w,
                               const Eigen::Ref<const Vector>& b1,
                               const Eigen::Ref<const Vector>& b2,
                               const IndexSet& support) {
    const Index p1 = data.p1();
    const Index p = p1 + data.p2();
    const Index m = static_cast<Index>(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0 || support[i] >= p)
            throw std::invalid_argument("restricted_hessian: support index out of range");
        if (i > 0 && support[i] <= support[i - 1])
            throw std::invalid_argument("restricted_hessian: support must be strictly ascending");
    }
    const Index n = data.n();
    const double inv_n = 1.0 / static_cast<double>(n);

    // Diagonal sample weights of the two loss blocks.
    Vector d1(n), d2(n);
    if (data.loss == Loss::Logistic) {
        const Vector t1 = data.X * b1;
        const Vector t2 = data.Z * b2;
        for (Index i = 0; i < n; ++i) {
            const double s1 = sigmoid(t1[i]);
            const double s2 = sigmoid(t2[i]);
            d1[i] = w.a * s1 * (1.0 - s1) + w.c;
            d2[i] = w.b * s2 * (1.0 - s2) + w.c;
        }
    } else {
        d1.setConstant(w.a + w.c);
        d2.setConstant(w.b + w.c);
    }

    Matrix H(m, m);
    for (Index r = 0; r < m; ++r) {
        const bool r1 = support[r] < p1;
        const auto col_r = r1 ? data.X.col(support[r]) : data.Z.col(support[r] - p1);
        for (Index c = r; c < m; ++c) {
            const bool c1 = support[c] < p1;
            const auto col_c = c1 ? data.X.col(support[c]) : data.Z.col(support[c] - p1);
            double sum = 0.0;
            if (r1 && c1) {
                for (Index i = 0; i < n; ++i) sum += col_r[i] * d1[i] * col_c[i];
            } else if (!r1 && !c1) {
                for (Index i = 0; i < n; ++i) sum += col_r[i] * d2[i] * col_c[i];
            } else {
                for (Index i = 0; i < n; ++i) sum += col_r[i] * col_c[i];
                sum *= -w.c;
            }
            sum *= inv_n;
            H(r, c) = sum;
            H(c, r) = sum;
        }
    }
    return H;
}

}  // namespace

Matrix restricted_hessian(const ProblemData& data, const WeightConfig& w,
                          const Iterate& beta, const IndexSet& support) {
    check_dims(data, beta.p1(), beta.p2());
    w.validate();
    return restricted_hessian_impl(data, w, beta.beta1(), beta.beta2(), support);
}

Matrix restricted_hessian(const ProblemData& data, const WeightConfig& w,
                          const Vector& stacked, const IndexSet& support) {
    if (stacked.size() != data.p1() + data.p2())
        throw std::invalid_argument("stacked coefficient length does not match data");
    w.validate();
    return restricted_hessian_impl(data, w, stacked.head(data.p1()),
                                   stacked.tail(data.p2()), support);
}

double smoothness_constant(const ProblemData& data, const WeightConfig& w) {
    w.validate();
    const bool logistic = data.loss == Loss::Logistic;
    const double ca = (logistic ? w.a / 4.0 : w.a) + w.c;
    const double cb = (logistic ? w.b / 4.0 : w.b) + w.c;
    const double inv_n = 1.0 / static_cast<double>(data.n());
    const Index p1 = data.p1();
    const Index p2 = data.p2();
    auto apply = [&](const Vector& v) {
        const Vector t1 = data.X * v.head(p1);
        const Vector t2 = data.Z * v.tail(p2);
        Vector out(p1 + p2);
        out.head(p1) = data.X.transpose() * (ca * t1 - w.c * t2) * inv_n;
        out.tail(p2) = data.Z.transpose() * (cb * t2 - w.c * t1) * inv_n;
        return out;
    };
    return power_iteration(p1 + p2, apply, "smoothness_constant");
}

double lipschitz_hessian_constant(const ProblemData& data, const WeightConfig& w) {
    w.validate();
    if (data.loss == Loss::Linear) return 0.0;
    double max_x1 = 0.0, max_z1 = 0.0;
    for (Index i = 0; i < data.n(); ++i) {
        max_x1 = std::max(max_x1, data.X.row(i).lpNorm<1>());
        max_z1 = std::max(max_z1, data.Z.row(i).lpNorm<1>());
    }
    const double lx = detail::top_eigenvalue_gram(data.X);
    const double lz = detail::top_eigenvalue_gram(data.Z);
    const double n = static_cast<double>(data.n());
    return 3.0 * std::sqrt(2.0) / n * std::max(w.a * max_x1 * lx, w.b * max_z1 * lz);
}

namespace detail {

double top_eigenvalue_gram(const Matrix& M) {
    auto apply = [&](const Vector& v) -> Vector { return M.transpose() * (M * v); };
    return power_iteration(M.cols(), apply, "top_eigenvalue_gram");
}

}  // namespace detail

}  // namespace scl
