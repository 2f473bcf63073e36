#pragma once

#include "scl/types.hpp"

namespace scl {

// Metrics accumulate sequentially in sample order so results are bit-stable
// and loop oracles can match them exactly.

/// Two-view classification error rate, in [0, 2]:
/// (||sign(X b1) - y||_0 + ||sign(Z b2) - y||_0) / n with sign(t) = 1 iff t > 0.
/// Requires binary y.
double cer(const ProblemData& data, const Iterate& beta);

/// Canonical correlation value ||X b1 - Z b2|| / n.
double ccv(const ProblemData& data, const Iterate& beta);

/// (||y - X b1|| + ||y - Z b2||) / n with unsquared norms, as defined.
/// squared_norms switches to (||y - X b1||^2 + ||y - Z b2||^2) / n for
/// comparison against conventional MSE; it is not the default.
double mse(const ProblemData& data, const Iterate& beta, bool squared_norms = false);

}  // namespace scl
