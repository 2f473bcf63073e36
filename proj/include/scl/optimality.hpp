#pragma once

#include "scl/types.hpp"

namespace scl {

enum class StationarityClause {
    None,                 // block passed all clauses
    OnSupportGradient,    // gradient nonzero on the support (full block)
    OffSupportThreshold,  // alpha-scaled gradient exceeds the magnitude threshold
    FullGradient,         // block under budget but gradient nonzero
};

const char* to_string(StationarityClause clause);

struct BlockDetail {
    bool at_budget = false;          // ||beta_j||_0 == s_j
    double threshold = 0.0;          // s_j-th largest magnitude (at-budget case)
    StationarityClause failed = StationarityClause::None;
    double violation = 0.0;          // worst clause violation for this block
};

struct StationarityVerdict {
    bool is_local_min_condition = false;
    bool is_alpha_stationary = false;
    double alpha_used = 0.0;   // 0 means the local-minimizer check (alpha -> 0+)
    double max_violation = 0.0;
    BlockDetail detail[2];
};

/// How the off-support magnitude threshold of the alpha-stationarity clause
/// is read: per block (s_j-th largest magnitude of beta_j, the default that
/// makes the blockwise fixed-point inclusion literal) or from the stacked
/// vector (s-th largest magnitude of (beta1; beta2)).
enum class ThresholdRule { PerBlock, Stacked };

/// Local-minimizer characterization: per block, gradient zero on the support
/// when the block is at budget, the whole gradient block zero otherwise.
/// Tolerances on gradient entries: effective tol = max(tol, 1e-8 * ||grad||_inf).
StationarityVerdict check_local_min(const ProblemData& data, const WeightConfig& w,
                                    const Iterate& beta, const SparsityBudget& budget,
                                    double tol = 1e-6);

/// alpha-stationarity: fixed point of the blockwise projected-gradient map.
/// On top of the local-min clauses, an at-budget block must satisfy
/// alpha * |grad_i| <= threshold for every off-support i. Violations are
/// reported in alpha-scaled units.
StationarityVerdict check_alpha_stationary(const ProblemData& data, const WeightConfig& w,
                                           const Iterate& beta, const SparsityBudget& budget,
                                           double alpha, double tol = 1e-6,
                                           ThresholdRule rule = ThresholdRule::PerBlock);

}  // namespace scl
