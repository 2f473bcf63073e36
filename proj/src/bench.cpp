#include "scl/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "scl/metrics.hpp"
#include "scl/rng.hpp"

namespace scl {
namespace bench {

void GridConfig::validate() const {
    if (n < 1 || p < 1) throw std::invalid_argument("bench: n and p must be >= 1");
    if (theta.empty() || s1.empty() || s2.empty())
        throw std::invalid_argument("bench: theta, s1 and s2 lists must be non-empty");
    if (reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
    for (double t : theta)
        if (!(t >= 0.0) || !(t < 1.0)) throw std::invalid_argument("bench: theta must be in [0, 1)");
    for (Index s : s1)
        if (s < 1 || s > p) throw std::invalid_argument("bench: s1 values must satisfy 1 <= s <= p");
    for (Index s : s2)
        if (s < 1 || s > p) throw std::invalid_argument("bench: s2 values must satisfy 1 <= s <= p");
}

std::uint64_t derive_seed(std::uint64_t base, std::size_t cell, int rep) {
    SplitMix64 rng(base ^ (static_cast<std::uint64_t>(cell) * 0x9E3779B97F4A7C15ULL) ^
                   static_cast<std::uint64_t>(rep));
    return rng.next();
}

unsigned thread_cap_from_env() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCL_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
    }
    return threads;
}

GridResult run_grid(const GridConfig& cfg, unsigned threads) {
    cfg.validate();

    struct Cell {
        double theta;
        Index s1;
        Index s2;
    };
    std::vector<Cell> cells;
    for (double t : cfg.theta)
        for (Index a : cfg.s1)
            for (Index b : cfg.s2) cells.push_back({t, a, b});

    const std::size_t total = cells.size() * static_cast<std::size_t>(cfg.reps);
    GridResult result;
    result.detail.resize(total);

    auto run_one = [&](std::size_t task) {
        const std::size_t cell_idx = task / cfg.reps;
        const int rep = static_cast<int>(task % cfg.reps);
        const Cell& cell = cells[cell_idx];

        SynthSpec spec;
        spec.n = cfg.n;
        spec.p = cfg.p;
        spec.s1 = cell.s1;
        spec.s2 = cell.s2;
        spec.theta = cell.theta;
        spec.loss = cfg.loss;
        spec.seed = derive_seed(cfg.seed, cell_idx, rep);
        SynthInstance inst = generate(spec);

        const SparsityBudget budget{cell.s1, cell.s2};
        const WeightConfig w = default_weights(cell.s1, cell.s2);
        SolverOptions opts = cfg.solver;
        opts.seed = spec.seed;

        const auto start = std::chrono::steady_clock::now();
        SolverReport rep_out = solve(inst.data, w, budget, opts);
        const auto stop = std::chrono::steady_clock::now();

        RunRow row;
        row.theta = cell.theta;
        row.s1 = cell.s1;
        row.s2 = cell.s2;
        row.rep = rep;
        row.seed = spec.seed;
        row.err = cfg.loss == Loss::Logistic ? cer(inst.data, rep_out.solution)
                                             : mse(inst.data, rep_out.solution);
        row.ccv = ccv(inst.data, rep_out.solution);
        row.seconds = std::chrono::duration<double>(stop - start).count();
        row.iterations = static_cast<int>(rep_out.trace.size());
        row.final_tol = rep_out.final_tol;
        result.detail[task] = row;
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    if (threads == 1) {
        for (std::size_t t = 0; t < total; ++t) run_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < total; t = next.fetch_add(1)) run_one(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    result.aggregate.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellRow agg;
        agg.theta = cells[c].theta;
        agg.s1 = cells[c].s1;
        agg.s2 = cells[c].s2;
        for (int r = 0; r < cfg.reps; ++r) {
            const RunRow& row = result.detail[c * cfg.reps + r];
            agg.mean_err += row.err;
            agg.mean_ccv += row.ccv;
            agg.mean_seconds += row.seconds;
            agg.mean_iterations += row.iterations;
        }
        const double reps = static_cast<double>(cfg.reps);
        agg.mean_err /= reps;
        agg.mean_ccv /= reps;
        agg.mean_seconds /= reps;
        agg.mean_iterations /= reps;
        result.aggregate.push_back(agg);
    }
    return result;
}

}  // namespace bench
}  // namespace scl
