#include "circlepack/cli.hpp"

#include <cstdio>
#include <iostream>
#include <limits>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "circlepack/bench.hpp"
#include "circlepack/io.hpp"
#include "circlepack/search.hpp"

namespace circlepack::cli {

namespace {

constexpr int kMaxCircles = 500;

struct ConfigFlags {
    int g = 32;
    int m = 3;
    int kp = 20;
    int kb = 5;
    double alpha = 0.999;

    void attach(CLI::App& app) {
        app.add_option("--g", g, "Initial random patterns")->check(CLI::PositiveNumber);
        app.add_option("--m", m, "Patterns selected per round")->check(CLI::PositiveNumber);
        app.add_option("--kp", kp, "Basin-hopping iterations per perturbation")->check(CLI::NonNegativeNumber);
        app.add_option("--kb", kb, "Perturbation loops before restart")->check(CLI::NonNegativeNumber);
        app.add_option("--alpha", alpha, "Container shrink factor")->check(CLI::Range(0.0, 1.0));
    }

    void apply(SolverConfig& cfg) const {
        cfg.initial_patterns = g;
        cfg.selected = m;
        cfg.hop_iterations = kp;
        cfg.perturb_loops = kb;
        cfg.alpha = alpha;
    }
};

const std::vector<std::string> kFamilyNames{"linear", "sqrt"};

Family family_from_flag(const std::string& text) { return *parse_family(text); }

struct SolveArgs {
    std::string family;
    int n = 0;
    std::optional<double> l0;
    double time = 600.0;
    std::uint64_t seed = 0;
    int threads = 0;
    ConfigFlags config;
    std::string output;
    std::string svg;
    std::string txt;
    bool verbose = false;
};

int do_solve(const SolveArgs& a) {
    const Family family = family_from_flag(a.family);
    const auto inst = make_instance(family, a.n);
    double L0 = 0.0;
    if (a.l0) {
        L0 = *a.l0;
    } else {
        const auto records = RecordsTable::from_environment();
        auto rec = records.lookup(family, a.n, RecordSource::PasPci);
        L0 = rec ? *rec : shelf_upper_bound(inst.radii);
    }
    SolverConfig cfg;
    a.config.apply(cfg);
    cfg.time_limit = a.time;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    if (a.verbose) {
        cfg.on_trace = [](const TraceRecord& t) {
            fmt::print(stderr, "[{:10.3f}s] {:<13} best U_e={:.3e} pool={}\n", t.seconds, t.phase, t.best_energy,
                       t.pool_size);
        };
    }
    const auto res = solve(inst, L0, cfg);
    std::FILE* summary = a.output.empty() ? stderr : stdout;
    fmt::print(summary, "family={} n={} L0={:.11f} time={:.3f}s lbfgs={} hops={} perturbations={} restarts={}\n",
               to_string(family), a.n, L0, res.seconds, res.counters.lbfgs_calls, res.counters.hop_batches,
               res.counters.perturbations, res.counters.restarts);
    if (!res.best) {
        fmt::print(summary, "no feasible pattern within {:.3f}s\n", a.time);
        return kNoResult;
    }
    fmt::print(summary, "L={:.11f}\n", res.L);

    // Reproducible mode leaves wall-clock time out of the file.
    const std::optional<double> wall = a.threads == 0 ? std::nullopt : std::optional<double>(res.seconds);
    const auto sol = to_solution_file(*res.best, family, a.seed, wall);
    const auto json = serialize_solution(sol);
    if (a.output.empty()) {
        std::fwrite(json.data(), 1, json.size(), stdout);
    } else {
        write_file(a.output, json);
    }
    if (!a.svg.empty()) write_file(a.svg, render_svg(sol));
    if (!a.txt.empty()) write_file(a.txt, to_plain_text(sol));
    return kOk;
}

int do_verify(const std::string& path, double tol) {
    SolutionFile sol;
    try {
        sol = parse_solution(read_file(path));
    } catch (const SolutionParseError& e) {
        fmt::print(stderr, "{}:{}:{}: {}\n", path, e.line(), e.column(), e.what());
        return kUsage;
    }
    const auto rep = verify_solution(sol, tol);
    fmt::print("n={} L={:.11f}\n", sol.n, sol.L);
    fmt::print("U_e={:.6e}\n", rep.energy);
    fmt::print("max pain={:.6e} (circle {})\n", rep.max_pain, rep.max_pain_circle);
    if (rep.worst_item.empty()) {
        fmt::print("worst violation=0 (none)\n");
    } else {
        fmt::print("worst violation={:.6e} ({})\n", rep.worst_depth, rep.worst_item);
    }
    for (const auto& issue : rep.issues) fmt::print("issue: {}\n", issue);
    fmt::print("{} at tol {:g}\n", rep.ok ? "FEASIBLE" : "INFEASIBLE", tol);
    return rep.ok ? kOk : kNoResult;
}

int do_render(const std::string& input, const std::string& output) {
    SolutionFile sol;
    try {
        sol = parse_solution(read_file(input));
    } catch (const SolutionParseError& e) {
        fmt::print(stderr, "{}:{}:{}: {}\n", input, e.line(), e.column(), e.what());
        return kUsage;
    }
    write_file(output, render_svg(sol));
    return kOk;
}

std::vector<int> size_range(int lo, int hi) {
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Packing unequal circles into the smallest square container"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Search for a packing and shrink the container");
    solve_cmd->add_option("--family", solve_args.family, "Instance family: linear (r_i=i) or sqrt (r_i=sqrt(i))")
        ->required()
        ->check(CLI::IsMember(kFamilyNames));
    solve_cmd->add_option("--n", solve_args.n, "Number of circles")->required()->check(CLI::Range(1, kMaxCircles));
    solve_cmd->add_option("--l0", solve_args.l0, "Starting container size (default: record, else shelf bound)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--time", solve_args.time, "Time limit in seconds")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--seed", solve_args.seed, "Random seed");
    solve_cmd->add_option("--threads", solve_args.threads, "Worker threads (0 = reproducible serial)")
        ->check(CLI::NonNegativeNumber);
    solve_args.config.attach(*solve_cmd);
    solve_cmd->add_option("-o,--output", solve_args.output, "Solution JSON path (default: stdout)");
    solve_cmd->add_option("--svg", solve_args.svg, "Also render the layout to this SVG path");
    solve_cmd->add_option("--txt", solve_args.txt, "Also export 'i x y r' plain text to this path");
    solve_cmd->add_flag("-v,--verbose", solve_args.verbose, "Print the phase trace to stderr");

    std::string verify_path;
    double verify_tol = 1e-9;
    auto* verify_cmd = app.add_subcommand("verify", "Check a solution file for overlaps");
    verify_cmd->add_option("solution", verify_path, "Solution JSON")->required();
    verify_cmd->add_option("--tol", verify_tol, "Largest accepted depth")->check(CLI::NonNegativeNumber);

    std::string render_in;
    std::string render_out;
    auto* render_cmd = app.add_subcommand("render", "Draw a solution as SVG");
    render_cmd->add_option("solution", render_in, "Solution JSON")->required();
    render_cmd->add_option("-o,--output,--svg", render_out, "SVG output path")->required();

    BenchOptions bench;
    std::string bench_family;
    int n_min = 14;
    int n_max = 14;
    std::string bench_out;
    ConfigFlags bench_config;
    auto* bench_cmd = app.add_subcommand("bench", "Repeat runs per instance and compare with the records");
    bench_cmd->add_option("--family", bench_family, "Instance family")
        ->required()
        ->check(CLI::IsMember(kFamilyNames));
    auto* nmin_opt = bench_cmd->add_option("--n-min,--n", n_min, "Smallest n")->check(CLI::Range(1, kMaxCircles));
    bench_cmd->add_option("--n-max", n_max, "Largest n (default: --n-min)")->check(CLI::Range(1, kMaxCircles));
    bench_cmd->add_option("--repeats", bench.repeats, "Runs per instance")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--time", bench.time_per_run, "Seconds per run")->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--seed", bench.seed, "Master seed");
    bench_cmd->add_option("--rel-tol", bench.rel_tol, "Relative tolerance for a hit")->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--threads", bench.threads, "Concurrent runs (0 = reproducible serial)")
        ->check(CLI::NonNegativeNumber);
    bench_config.attach(*bench_cmd);
    bench_cmd->add_option("-o,--output", bench_out, "CSV report path");
    nmin_opt->required();

    BenchOptions sweep;
    std::string sweep_family;
    int sweep_n = 27;
    std::vector<int> m_values{1, 2, 3, 4, 5};
    std::string sweep_out;
    ConfigFlags sweep_config;
    auto* sweep_cmd = app.add_subcommand("sweep", "Hits and solution quality as a function of m");
    sweep_cmd->add_option("--family", sweep_family, "Instance family")
        ->required()
        ->check(CLI::IsMember(kFamilyNames));
    sweep_cmd->add_option("--n", sweep_n, "Number of circles")->required()->check(CLI::Range(1, kMaxCircles));
    sweep_cmd->add_option("--m-values", m_values, "Values of m to try")->delimiter(',');
    sweep_cmd->add_option("--repeats", sweep.repeats, "Runs per m")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--time", sweep.time_per_run, "Seconds per run")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--rel-tol", sweep.rel_tol, "Relative tolerance for a hit")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--threads", sweep.threads, "Concurrent runs (0 = reproducible serial)")
        ->check(CLI::NonNegativeNumber);
    sweep_config.attach(*sweep_cmd);
    sweep_cmd->add_option("-o,--output", sweep_out, "CSV report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve_cmd) return do_solve(solve_args);
        if (*verify_cmd) return do_verify(verify_path, verify_tol);
        if (*render_cmd) return do_render(render_in, render_out);
        if (*bench_cmd) {
            if (bench_cmd->count("--n-max") == 0) n_max = n_min;
            if (n_max < n_min) {
                fmt::print(stderr, "--n-max must be >= --n-min\n");
                return kUsage;
            }
            bench.family = family_from_flag(bench_family);
            bench.sizes = size_range(n_min, n_max);
            bench_config.apply(bench.solver);
            bench.records = RecordsTable::from_environment();
            const auto report = run_bench(bench);
            fmt::print("{}", bench_table(report));
            if (!bench_out.empty()) write_file(bench_out, bench_csv(report, bench.threads != 0));
            return kOk;
        }
        if (*sweep_cmd) {
            sweep.family = family_from_flag(sweep_family);
            sweep.sizes = {sweep_n};
            sweep_config.apply(sweep.solver);
            sweep.records = RecordsTable::from_environment();
            const auto rows = run_sweep(sweep, m_values);
            fmt::print("{}", sweep_table(rows));
            if (!sweep_out.empty()) write_file(sweep_out, sweep_csv(rows, sweep.threads != 0));
            return kOk;
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsage;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("circlepack");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace circlepack::cli
