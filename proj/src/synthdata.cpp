#include "scl/synthdata.hpp"

#include <cmath>

#include "scl/model.hpp"
#include "scl/rng.hpp"

namespace scl {

void SynthSpec::validate() const {
    if (n < 1) throw std::invalid_argument("spec: n must be >= 1");
    if (p < 1) throw std::invalid_argument("spec: p must be >= 1");
    if (s1 < 1 || s1 > p) throw std::invalid_argument("spec: need 1 <= s1 <= p");
    if (s2 < 1 || s2 > p) throw std::invalid_argument("spec: need 1 <= s2 <= p");
    if (!(theta >= 0.0) || !(theta < 1.0))
        throw std::invalid_argument("spec: theta must lie in [0, 1)");
}

SynthInstance generate(const SynthSpec& spec) {
    spec.validate();
    // Sub-seeds are drawn in a fixed, documented order so each artifact has
    // its own stream.
    SplitMix64 root(spec.seed);
    SplitMix64 rng_x(root.next());
    SplitMix64 rng_lambda(root.next());
    SplitMix64 rng_supp1(root.next());
    SplitMix64 rng_val1(root.next());
    SplitMix64 rng_supp2(root.next());
    SplitMix64 rng_val2(root.next());
    SplitMix64 rng_labels(root.next());

    SynthInstance inst;
    ProblemData& data = inst.data;
    data.loss = spec.loss;

    // AR(1) rows: x_{i,1} ~ N(0,1), x_{i,j+1} = theta x_{i,j} + sqrt(1-theta^2) c,
    // with a fresh innovation per (i, j). Row-major draw order.
    data.X.resize(spec.n, spec.p);
    const double innov = std::sqrt(1.0 - spec.theta * spec.theta);
    for (Index i = 0; i < spec.n; ++i) {
        data.X(i, 0) = rng_x.normal();
        for (Index j = 1; j < spec.p; ++j)
            data.X(i, j) = spec.theta * data.X(i, j - 1) + innov * rng_x.normal();
    }

    data.Z.resize(spec.n, spec.p);
    for (Index i = 0; i < spec.n; ++i)
        for (Index j = 0; j < spec.p; ++j) data.Z(i, j) = data.X(i, j) + 0.01 * rng_lambda.normal();

    GroundTruth& truth = inst.truth;
    truth.support1 = sample_indices(rng_supp1, spec.p, spec.s1);
    truth.beta1_true = Vector::Zero(spec.p);
    for (Index i : truth.support1) truth.beta1_true[i] = rng_val1.normal();
    truth.support2 = sample_indices(rng_supp2, spec.p, spec.s2);
    truth.beta2_true = Vector::Zero(spec.p);
    for (Index i : truth.support2) truth.beta2_true[i] = rng_val2.normal();

    const Vector t1 = data.X * truth.beta1_true;
    const Vector t2 = data.Z * truth.beta2_true;
    data.y.resize(spec.n);
    if (spec.loss == Loss::Logistic) {
        for (Index i = 0; i < spec.n; ++i) {
            const double prob = 0.5 * (sigmoid(t1[i]) + sigmoid(t2[i]));
            const bool hit = rng_labels.uniform() < prob;
            // The stated probability is Prob{y = 0}; flip_labels samples it as
            // Prob{y = 1} instead.
            data.y[i] = (hit != spec.flip_labels) ? 0.0 : 1.0;
        }
    } else {
        data.y = 0.5 * (t1 + t2);
    }
    return inst;
}

Matrix scale_features(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
        const double lo = m.col(j).minCoeff();
        const double hi = m.col(j).maxCoeff();
        if (hi == lo) {
            out.col(j).setZero();
        } else {
            const double scale = 2.0 / (hi - lo);
            out.col(j) = (m.col(j).array() - lo) * scale - 1.0;
        }
    }
    return out;
}

SplitResult random_split(const ProblemData& data, Index n_test, std::uint64_t seed) {
    if (n_test <= 0 || n_test >= data.n())
        throw std::invalid_argument("random_split: need 0 < n_test < n");
    SplitMix64 rng(seed);
    SplitResult out;
    out.test_rows = sample_indices(rng, data.n(), n_test);
    out.train_rows.reserve(data.n() - n_test);
    std::size_t next = 0;
    for (Index i = 0; i < data.n(); ++i) {
        if (next < out.test_rows.size() && out.test_rows[next] == i) {
            ++next;
        } else {
            out.train_rows.push_back(i);
        }
    }

    auto take = [&](const IndexSet& rows) {
        ProblemData part;
        part.loss = data.loss;
        part.X.resize(rows.size(), data.p1());
        part.Z.resize(rows.size(), data.p2());
        part.y.resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            part.X.row(r) = data.X.row(rows[r]);
            part.Z.row(r) = data.Z.row(rows[r]);
            part.y[r] = data.y[rows[r]];
        }
        return part;
    };
    out.train = take(out.train_rows);
    out.test = take(out.test_rows);
    return out;
}

}  // namespace scl
