#pragma once

#include <cstdint>
#include <vector>

#include "scl/gpna.hpp"
#include "scl/synthdata.hpp"
#include "scl/types.hpp"

namespace scl {
namespace bench {

/// Grid over theta x s1 x s2 (cross product), `reps` repetitions per cell.
struct GridConfig {
    Index n = 0;
    Index p = 0;
    std::vector<double> theta;
    std::vector<Index> s1;
    std::vector<Index> s2;
    int reps = 1;
    std::uint64_t seed = 0;
    Loss loss = Loss::Logistic;
    SolverOptions solver;

    void validate() const;
};

struct RunRow {
    double theta = 0.0;
    Index s1 = 0;
    Index s2 = 0;
    int rep = 0;
    std::uint64_t seed = 0;
    double err = 0.0;  // CER (logistic) or MSE (linear), on training data
    double ccv = 0.0;
    double seconds = 0.0;  // wall time around solve() only
    int iterations = 0;
    double final_tol = 0.0;
};

struct CellRow {
    double theta = 0.0;
    Index s1 = 0;
    Index s2 = 0;
    double mean_err = 0.0;
    double mean_ccv = 0.0;
    double mean_seconds = 0.0;
    double mean_iterations = 0.0;
};

struct GridResult {
    std::vector<RunRow> detail;     // one row per (cell, rep), cell-major order
    std::vector<CellRow> aggregate;  // one row per cell, same cell order
};

/// Per-run instance seed, derived from the base seed, cell index and rep.
std::uint64_t derive_seed(std::uint64_t base, std::size_t cell, int rep);

/// Runs the whole grid. Cells x reps are independent; `threads` > 1 runs them
/// on a worker pool (row order in the result is deterministic either way).
GridResult run_grid(const GridConfig& cfg, unsigned threads = 1);

/// Thread count from SCL_THREADS, defaulting to the hardware concurrency.
unsigned thread_cap_from_env();

}  // namespace bench
}  // namespace scl
