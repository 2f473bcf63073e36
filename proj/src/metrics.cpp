#include "scl/metrics.hpp"

#include <cmath>

namespace scl {

namespace {

// Sequential dot product of row i of M with v; the accumulation order is part
// of the metric contract (bit-stable, oracle-matchable).
double row_score(const Matrix& M, Index i, const Vector& v) {
    double s = 0.0;
    for (Index j = 0; j < M.cols(); ++j) s += M(i, j) * v[j];
    return s;
}

void check_dims(const ProblemData& data, const Iterate& beta) {
    if (beta.p1() != data.p1() || beta.p2() != data.p2())
        throw std::invalid_argument("metric: coefficient dimensions do not match data");
}

}  // namespace

double cer(const ProblemData& data, const Iterate& beta) {
    check_dims(data, beta);
    for (Index i = 0; i < data.y.size(); ++i)
        if (data.y[i] != 0.0 && data.y[i] != 1.0)
            throw std::invalid_argument("cer: responses must be binary");
    double mismatches = 0.0;
    for (Index i = 0; i < data.n(); ++i) {
        const double s1 = row_score(data.X, i, beta.beta1()) > 0.0 ? 1.0 : 0.0;
        const double s2 = row_score(data.Z, i, beta.beta2()) > 0.0 ? 1.0 : 0.0;
        if (s1 != data.y[i]) mismatches += 1.0;
        if (s2 != data.y[i]) mismatches += 1.0;
    }
    return mismatches / static_cast<double>(data.n());
}

double ccv(const ProblemData& data, const Iterate& beta) {
    check_dims(data, beta);
    double sq = 0.0;
    for (Index i = 0; i < data.n(); ++i) {
        const double d = row_score(data.X, i, beta.beta1()) - row_score(data.Z, i, beta.beta2());
        sq += d * d;
    }
    return std::sqrt(sq) / static_cast<double>(data.n());
}

double mse(const ProblemData& data, const Iterate& beta, bool squared_norms) {
    check_dims(data, beta);
    double sq1 = 0.0, sq2 = 0.0;
    for (Index i = 0; i < data.n(); ++i) {
        const double r1 = data.y[i] - row_score(data.X, i, beta.beta1());
        const double r2 = data.y[i] - row_score(data.Z, i, beta.beta2());
        sq1 += r1 * r1;
        sq2 += r2 * r2;
    }
    const double n = static_cast<double>(data.n());
    if (squared_norms) return (sq1 + sq2) / n;
    return (std::sqrt(sq1) + std::sqrt(sq2)) / n;
}

}  // namespace scl
