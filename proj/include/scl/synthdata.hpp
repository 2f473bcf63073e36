#pragma once

#include <cstdint>

#include "scl/types.hpp"

namespace scl {

struct SynthSpec {
    Index n = 0;
    Index p = 0;  // p1 = p2 = p
    Index s1 = 0;
    Index s2 = 0;
    double theta = 0.0;  // AR(1) column correlation, in [0, 1)
    Loss loss = Loss::Logistic;
    std::uint64_t seed = 0;
    bool flip_labels = false;  // sample the stated probability as Prob{y=1}

    void validate() const;
};

struct GroundTruth {
    Vector beta1_true;  // dense length p, s1 nonzeros
    Vector beta2_true;
    IndexSet support1;
    IndexSet support2;
};

struct SynthInstance {
    ProblemData data;
    GroundTruth truth;
};

/// Synthetic two-view instance: rows of X follow an AR(1) process with
/// correlation theta, Z = X + 0.01 * Lambda with standard normal Lambda, the
/// true coefficients have Gaussian values on uniformly drawn supports.
/// Logistic responses are Bernoulli with
///   Prob{y_i = 0} = (sigmoid(<x_i, beta1>) + sigmoid(<z_i, beta2>)) / 2
/// (as stated; flip_labels samples it as Prob{y_i = 1} instead). Linear
/// responses are y = (X beta1 + Z beta2) / 2 exactly.
/// Deterministic for a fixed spec.
SynthInstance generate(const SynthSpec& spec);

/// Feature-wise affine scaling of each column onto [-1, 1]; constant columns
/// map to zero.
Matrix scale_features(const Matrix& m);

struct SplitResult {
    ProblemData train;
    ProblemData test;
    IndexSet train_rows;
    IndexSet test_rows;
};

/// Reproducible disjoint row split with n_test test rows.
SplitResult random_split(const ProblemData& data, Index n_test, std::uint64_t seed);

}  // namespace scl
