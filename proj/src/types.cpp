#include "scl/types.hpp"

#include <algorithm>
#include <cmath>

namespace scl {

Loss loss_from_string(const std::string& name) {
    if (name == "logistic") return Loss::Logistic;
    if (name == "linear") return Loss::Linear;
    throw std::invalid_argument("unknown loss '" + name + "' (expected logistic|linear)");
}

void ProblemData::validate() const {
    if (X.rows() < 1) throw std::invalid_argument("X must have at least one row");
    if (Z.rows() != X.rows() || y.size() != X.rows())
        throw std::invalid_argument("X, Z and y must share the sample count");
    if (X.cols() < 1 || Z.cols() < 1)
        throw std::invalid_argument("X and Z must have at least one column");
    if (!X.allFinite() || !Z.allFinite() || !y.allFinite())
        throw std::invalid_argument("data contains non-finite entries");
    if (loss == Loss::Logistic) {
        for (Index i = 0; i < y.size(); ++i) {
            if (y[i] != 0.0 && y[i] != 1.0)
                throw std::invalid_argument("logistic loss requires binary responses in {0,1}");
        }
    }
}

void WeightConfig::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw std::invalid_argument("weights a, b, c must be positive");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw std::invalid_argument("weights must be finite");
}

WeightConfig default_weights(Index s1, Index s2) {
    if (s1 < 1 || s2 < 1) throw std::invalid_argument("default weights need s1, s2 >= 1");
    const double s = static_cast<double>(s1 + s2);
    return {static_cast<double>(s1) / s, static_cast<double>(s2) / s, 1.0 / s};
}

void SparsityBudget::validate(Index p1, Index p2) const {
    if (s1 < 1 || s1 > p1) throw std::invalid_argument("budget requires 1 <= s1 <= p1");
    if (s2 < 1 || s2 > p2) throw std::invalid_argument("budget requires 1 <= s2 <= p2");
}

IndexSet nonzero_support(const Vector& v) {
    IndexSet support;
    for (Index i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) support.push_back(i);
    return support;
}

Iterate::Iterate(Vector beta1, Vector beta2)
    : beta1_(std::move(beta1)),
      beta2_(std::move(beta2)),
      support1_(nonzero_support(beta1_)),
      support2_(nonzero_support(beta2_)) {}

Iterate Iterate::zero(Index p1, Index p2) {
    return Iterate(Vector::Zero(p1), Vector::Zero(p2));
}

Iterate Iterate::from_stacked(const Vector& stacked, Index p1) {
    if (p1 < 0 || p1 > stacked.size())
        throw std::invalid_argument("stacked split point out of range");
    return Iterate(stacked.head(p1), stacked.tail(stacked.size() - p1));
}

Vector Iterate::stacked() const {
    Vector out(beta1_.size() + beta2_.size());
    out << beta1_, beta2_;
    return out;
}

IndexSet Iterate::stacked_support() const {
    IndexSet out = support1_;
    out.reserve(support1_.size() + support2_.size());
    for (Index i : support2_) out.push_back(i + beta1_.size());
    return out;
}

}  // namespace scl
