#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

namespace scl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexSet = std::vector<Index>;  // strictly ascending index lists

enum class Loss { Logistic, Linear };

inline const char* to_string(Loss loss) {
    return loss == Loss::Logistic ? "logistic" : "linear";
}

Loss loss_from_string(const std::string& name);

/// Thrown when an iterative numeric procedure fails to converge or a
/// factorization breaks down in a way the caller cannot recover from.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Armijo search exhausted max_backtracks; carries the last backtrack count
/// and the residual violation of the acceptance inequality.
class line_search_error : public numeric_error {
public:
    line_search_error(int q, double violation)
        : numeric_error("line search failed after " + std::to_string(q) +
                        " backtracks (violation " + std::to_string(violation) + ")"),
          backtracks(q),
          violation(violation) {}
    int backtracks;
    double violation;
};

/// A two-view problem instance: rows of X and Z are paired samples sharing
/// the response y.
struct ProblemData {
    Matrix X;  // n x p1
    Matrix Z;  // n x p2
    Vector y;  // length n
    Loss loss = Loss::Linear;

    Index n() const { return X.rows(); }
    Index p1() const { return X.cols(); }
    Index p2() const { return Z.cols(); }

    void validate() const;
};

struct WeightConfig {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;

    void validate() const;
};

/// Default weights a = s1/(s1+s2), b = s2/(s1+s2), c = 1/(s1+s2).
WeightConfig default_weights(Index s1, Index s2);

struct SparsityBudget {
    Index s1 = 0;
    Index s2 = 0;

    Index aggregate() const { return s1 + s2; }
    void validate(Index p1, Index p2) const;
};

/// Coefficient pair with cached supports. Supports are always the exact
/// nonzero patterns of the vectors.
class Iterate {
public:
    Iterate() = default;
    Iterate(Vector beta1, Vector beta2);

    static Iterate zero(Index p1, Index p2);
    static Iterate from_stacked(const Vector& stacked, Index p1);

    const Vector& beta1() const { return beta1_; }
    const Vector& beta2() const { return beta2_; }
    const IndexSet& support1() const { return support1_; }
    const IndexSet& support2() const { return support2_; }

    Index p1() const { return beta1_.size(); }
    Index p2() const { return beta2_.size(); }

    Vector stacked() const;
    /// Supports of both blocks as indices into the stacked vector (block 2
    /// offset by p1), ascending.
    IndexSet stacked_support() const;

    bool feasible(const SparsityBudget& budget) const {
        return static_cast<Index>(support1_.size()) <= budget.s1 &&
               static_cast<Index>(support2_.size()) <= budget.s2;
    }

private:
    Vector beta1_;
    Vector beta2_;
    IndexSet support1_;
    IndexSet support2_;
};

IndexSet nonzero_support(const Vector& v);

}  // namespace scl
