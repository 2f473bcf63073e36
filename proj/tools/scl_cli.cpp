// scl: generate / fit / eval / bench for two-view sparse collaborative
// learning. Exit codes: 0 success, 2 usage or validation error, 3 numeric
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scl/bench.hpp"
#include "scl/gpna.hpp"
#include "scl/io.hpp"
#include "scl/metrics.hpp"
#include "scl/oracle.hpp"
#include "scl/synthdata.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SolverFlags {
    scl::SolverOptions opts;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sigma", opts.sigma, "Descent coefficient");
        cmd->add_option("--eps-stop", opts.epsilon_stop, "Stopping tolerance on tol_k");
        cmd->add_option("--eps-gate", opts.epsilon_gate, "Newton gate tolerance");
        cmd->add_option("--alpha0", opts.alpha0, "Initial step size");
        cmd->add_option("--gamma", opts.gamma, "Backtracking factor");
        cmd->add_option("--max-iter", opts.max_iter, "Iteration cap");
    }
};

scl::Loss resolve_loss(const fs::path& data_dir, const std::string& flag) {
    if (!flag.empty()) return scl::loss_from_string(flag);
    const fs::path spec_path = data_dir / "spec.json";
    if (fs::exists(spec_path))
        return scl::io::spec_from_json(scl::io::read_json(spec_path)).loss;
    throw std::invalid_argument("no --loss given and no spec.json in " + data_dir.string());
}

int cmd_generate(const scl::SynthSpec& spec, const fs::path& out_dir) {
    spec.validate();
    scl::SynthInstance inst = scl::generate(spec);
    fs::create_directories(out_dir);
    scl::io::write_instance(out_dir, inst.data);
    scl::io::write_json(out_dir / "spec.json", scl::io::spec_to_json(spec));
    scl::io::write_json(out_dir / "truth.json", scl::io::truth_to_json(inst.truth));
    std::cout << "wrote instance to " << out_dir.string() << "\n";
    return 0;
}

int cmd_fit(const fs::path& data_dir, const fs::path& out_dir, const std::string& loss_flag,
            scl::Index s1, scl::Index s2, std::optional<double> a, std::optional<double> b,
            std::optional<double> c, scl::SolverOptions opts) {
    const scl::Loss loss = resolve_loss(data_dir, loss_flag);
    const scl::ProblemData data = scl::io::read_instance(data_dir, loss);

    if (s1 == 0 || s2 == 0) {
        const fs::path spec_path = data_dir / "spec.json";
        if (!fs::exists(spec_path))
            throw std::invalid_argument("budget flags --s1/--s2 required without spec.json");
        const scl::SynthSpec spec = scl::io::spec_from_json(scl::io::read_json(spec_path));
        if (s1 == 0) s1 = spec.s1;
        if (s2 == 0) s2 = spec.s2;
    }
    const scl::SparsityBudget budget{s1, s2};
    budget.validate(data.p1(), data.p2());

    scl::WeightConfig w = scl::default_weights(s1, s2);
    if (a) w.a = *a;
    if (b) w.b = *b;
    if (c) w.c = *c;
    w.validate();

    const auto start = std::chrono::steady_clock::now();
    const scl::SolverReport report = scl::solve(data, w, budget, opts);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();

    fs::create_directories(out_dir);
    scl::io::write_json(out_dir / "solution.json", scl::io::solution_to_json(report.solution));
    scl::io::write_trace_csv(out_dir / "trace.csv", report.trace);

    json metrics;
    if (loss == scl::Loss::Logistic) {
        metrics["cer"] = scl::cer(data, report.solution);
    } else {
        metrics["mse"] = scl::mse(data, report.solution);
    }
    metrics["ccv"] = scl::ccv(data, report.solution);

    json summary{
        {"objective", report.trace.empty() ? 0.0 : report.trace.back().objective},
        {"final_tol", report.final_tol},
        {"termination",
         report.termination == scl::Termination::TolReached ? "tol_reached" : "max_iter"},
        {"iterations", report.trace.size()},
        {"weights", {{"a", w.a}, {"b", w.b}, {"c", w.c}}},
        {"budget", {{"s1", s1}, {"s2", s2}}},
        {"loss", scl::to_string(loss)},
        {"metrics", metrics},
        {"solve_seconds", seconds},
        {"options",
         {{"sigma", opts.sigma},
          {"epsilon_stop", opts.epsilon_stop},
          {"epsilon_gate", opts.epsilon_gate},
          {"alpha0", opts.alpha0},
          {"gamma", opts.gamma},
          {"max_iter", opts.max_iter},
          {"seed", opts.seed}}},
    };
    scl::io::write_json(out_dir / "summary.json", summary);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_eval(const fs::path& data_dir, const fs::path& solution_path,
             const std::string& loss_flag, double test_frac, std::uint64_t seed) {
    const scl::Loss loss = resolve_loss(data_dir, loss_flag);
    scl::ProblemData data = scl::io::read_instance(data_dir, loss);
    const scl::Iterate beta = scl::io::solution_from_json(scl::io::read_json(solution_path));

    json out;
    if (test_frac > 0.0) {
        if (test_frac >= 1.0) throw std::invalid_argument("--test-frac must lie in (0, 1)");
        const auto n_test =
            std::max<scl::Index>(1, static_cast<scl::Index>(std::llround(test_frac * data.n())));
        scl::SplitResult split = scl::random_split(data, n_test, seed);
        data = std::move(split.test);
        out["split"] = {{"n_test", n_test}, {"seed", seed}};
    }
    if (loss == scl::Loss::Logistic) {
        out["cer"] = scl::cer(data, beta);
    } else {
        out["mse"] = scl::mse(data, beta);
    }
    out["ccv"] = scl::ccv(data, beta);
    std::cout << out.dump(2) << "\n";
    return 0;
}

scl::bench::GridConfig parse_grid_config(const fs::path& path) {
    const json j = scl::io::read_json(path);
    scl::bench::GridConfig cfg;
    cfg.n = j.at("n").get<scl::Index>();
    cfg.p = j.at("p").get<scl::Index>();
    cfg.theta = j.at("theta").get<std::vector<double>>();
    cfg.s1 = j.at("s1").get<std::vector<scl::Index>>();
    cfg.s2 = j.at("s2").get<std::vector<scl::Index>>();
    cfg.reps = j.at("reps").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.loss = scl::loss_from_string(j.at("loss").get<std::string>());
    if (j.contains("max_iter")) cfg.solver.max_iter = j["max_iter"].get<int>();
    if (j.contains("eps_stop")) cfg.solver.epsilon_stop = j["eps_stop"].get<double>();
    if (j.contains("eps_gate")) cfg.solver.epsilon_gate = j["eps_gate"].get<double>();
    if (j.contains("sigma")) cfg.solver.sigma = j["sigma"].get<double>();
    return cfg;
}

int cmd_bench(const fs::path& config_path, const fs::path& out_dir) {
    const scl::bench::GridConfig cfg = parse_grid_config(config_path);
    const scl::bench::GridResult result =
        scl::bench::run_grid(cfg, scl::bench::thread_cap_from_env());

    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "detail.csv", std::ios::binary);
        out << "theta,s1,s2,rep,seed,err,ccv,time_s,iterations,final_tol\n";
        for (const auto& r : result.detail) {
            out << scl::io::format_double(r.theta) << ',' << r.s1 << ',' << r.s2 << ',' << r.rep
                << ',' << r.seed << ',' << scl::io::format_double(r.err) << ','
                << scl::io::format_double(r.ccv) << ',' << scl::io::format_double(r.seconds) << ','
                << r.iterations << ',' << scl::io::format_double(r.final_tol) << '\n';
        }
    }
    {
        std::ofstream out(out_dir / "aggregate.csv", std::ios::binary);
        out << "theta,s1,s2,mean_err,mean_ccv,mean_time_s,mean_iterations\n";
        for (const auto& r : result.aggregate) {
            out << scl::io::format_double(r.theta) << ',' << r.s1 << ',' << r.s2 << ','
                << scl::io::format_double(r.mean_err) << ',' << scl::io::format_double(r.mean_ccv)
                << ',' << scl::io::format_double(r.mean_seconds) << ','
                << scl::io::format_double(r.mean_iterations) << '\n';
        }
    }
    std::cout << "wrote " << result.detail.size() << " detail rows, " << result.aggregate.size()
              << " aggregate rows to " << out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse collaborative learning solver (GPNA)"};
    app.require_subcommand(1);

    // generate
    scl::SynthSpec spec;
    std::string gen_loss = "logistic";
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("generate", "Write a synthetic instance");
    gen->add_option("--n", spec.n, "Samples")->required();
    gen->add_option("--p", spec.p, "Features per view")->required();
    gen->add_option("--s1", spec.s1, "True sparsity, view 1")->required();
    gen->add_option("--s2", spec.s2, "True sparsity, view 2")->required();
    gen->add_option("--theta", spec.theta, "AR(1) column correlation in [0,1)");
    gen->add_option("--loss", gen_loss, "logistic|linear");
    gen->add_option("--seed", spec.seed, "RNG seed");
    gen->add_flag("--flip-labels", spec.flip_labels,
                  "Sample the stated label probability as Prob{y=1}");
    gen->add_option("--out", gen_out, "Output directory")->required();

    // fit
    std::string fit_data, fit_out, fit_loss;
    scl::Index fit_s1 = 0, fit_s2 = 0;
    std::optional<double> fit_a, fit_b, fit_c;
    SolverFlags fit_solver;
    std::uint64_t fit_seed = 0;
    CLI::App* fit = app.add_subcommand("fit", "Run GPNA on an instance directory");
    fit->add_option("--data", fit_data, "Instance directory (X.csv, Z.csv, y.csv)")->required();
    fit->add_option("--out", fit_out, "Report directory")->required();
    fit->add_option("--loss", fit_loss, "logistic|linear (default: spec.json)");
    fit->add_option("--s1", fit_s1, "Sparsity budget, view 1 (default: spec.json)");
    fit->add_option("--s2", fit_s2, "Sparsity budget, view 2 (default: spec.json)");
    fit->add_option("--a", fit_a, "Weight of the view-1 loss");
    fit->add_option("--b", fit_b, "Weight of the view-2 loss");
    fit->add_option("--c", fit_c, "Weight of the coupling term");
    fit->add_option("--seed", fit_seed, "Recorded in the summary");
    fit_solver.attach(fit);

    // eval
    std::string eval_data, eval_solution, eval_loss;
    double test_frac = 0.0;
    std::uint64_t eval_seed = 0;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a solution file");
    eval->add_option("--data", eval_data, "Instance directory")->required();
    eval->add_option("--solution", eval_solution, "solution.json path")->required();
    eval->add_option("--loss", eval_loss, "logistic|linear (default: spec.json)");
    eval->add_option("--test-frac", test_frac, "Evaluate on a held-out fraction");
    eval->add_option("--seed", eval_seed, "Split seed");

    // bench
    std::string bench_config, bench_out;
    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark grid");
    bench->add_option("--config", bench_config, "Grid config JSON")->required();
    bench->add_option("--out", bench_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            spec.loss = scl::loss_from_string(gen_loss);
            return cmd_generate(spec, gen_out);
        }
        if (fit->parsed()) {
            fit_solver.opts.seed = fit_seed;
            return cmd_fit(fit_data, fit_out, fit_loss, fit_s1, fit_s2, fit_a, fit_b, fit_c,
                           fit_solver.opts);
        }
        if (eval->parsed()) return cmd_eval(eval_data, eval_solution, eval_loss, test_frac, eval_seed);
        if (bench->parsed()) return cmd_bench(bench_config, bench_out);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const scl::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
