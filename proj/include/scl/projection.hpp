#pragma once

#include "scl/types.hpp"

namespace scl {

struct ProjectionResult {
    Vector vector;       // input with all but the kept entries zeroed
    IndexSet kept;       // retained indices, ascending
    bool tie_broken = false;  // s-th and (s+1)-th magnitudes tied (nonzero)
};

/// Euclidean projection onto { v : ||v||_0 <= s }: keeps the s
/// largest-magnitude entries. At magnitude ties the kept set prefers smaller
/// indices, which fixes one element of the set-valued projection.
ProjectionResult project_sparse(const Vector& v, Index s);

/// Blockwise projection of a stacked vector: first p1 coordinates onto
/// ||.||_0 <= s1, the rest onto ||.||_0 <= s2.
Iterate project_pair(const Vector& stacked, Index p1, const SparsityBudget& budget);

}  // namespace scl
