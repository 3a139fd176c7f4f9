#include "circlepack/bench.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

namespace circlepack {

double gap_percent(double found, double record) { return (found - record) / record * 100.0; }

bool is_hit(double found, double record, double rel_tol) { return found <= record * (1.0 + rel_tol); }

std::optional<double> BenchRow::gap(const std::optional<double>& record) const {
    if (!best_L || !record) return std::nullopt;
    return gap_percent(*best_L, *record);
}

std::uint64_t bench_run_seed(std::uint64_t seed, int n, int rep) {
    auto rng = substream(seed, static_cast<std::uint64_t>(n) * 1000003ULL + static_cast<std::uint64_t>(rep));
    return rng();
}

double bench_start_size(const BenchOptions& opts, int n) {
    if (auto rec = opts.records.lookup(opts.family, n, RecordSource::PasPci)) return *rec * (1.0 + opts.rel_tol);
    return shelf_upper_bound(make_instance(opts.family, n).radii);
}

BenchRow aggregate(Family family, int n, std::vector<BenchRun> runs, const RecordsTable& records, double rel_tol) {
    BenchRow row;
    row.family = family;
    row.n = n;
    row.repeats = static_cast<int>(runs.size());
    row.record_paspci = records.lookup(family, n, RecordSource::PasPci);
    row.record_packomania = records.lookup(family, n, RecordSource::Packomania);
    row.record_asgo = records.lookup(family, n, RecordSource::Asgo);

    double sum_L = 0.0;
    int feasible = 0;
    double sum_t = 0.0;
    int hits = 0;
    for (auto& run : runs) {
        run.hit = run.feasible && row.record_paspci && is_hit(run.L, *row.record_paspci, rel_tol);
        if (run.feasible) {
            ++feasible;
            sum_L += run.L;
            row.best_L = row.best_L ? std::min(*row.best_L, run.L) : run.L;
            row.worst_L = row.worst_L ? std::max(*row.worst_L, run.L) : run.L;
        }
        if (run.hit) {
            ++hits;
            sum_t += run.seconds;
            row.best_time = row.best_time ? std::min(*row.best_time, run.seconds) : run.seconds;
        }
    }
    if (feasible > 0) row.average_L = sum_L / feasible;
    if (row.record_paspci) row.hits = hits;
    if (hits > 0) row.average_time = sum_t / hits;
    row.runs = std::move(runs);
    return row;
}

namespace {

BenchRun single_run(const BenchOptions& opts, int n, int rep) {
    SolverConfig cfg = opts.solver;
    cfg.time_limit = opts.time_per_run;
    cfg.seed = bench_run_seed(opts.seed, n, rep);
    cfg.threads = 0;
    cfg.on_trace = nullptr;
    const auto inst = make_instance(opts.family, n);
    const auto res = solve(inst, bench_start_size(opts, n), cfg);
    BenchRun run;
    run.seed = cfg.seed;
    run.feasible = res.best.has_value();
    run.L = res.L;
    run.seconds = res.seconds;
    return run;
}

std::vector<BenchRun> run_repeats(const BenchOptions& opts, int n) {
    std::vector<BenchRun> runs(static_cast<std::size_t>(opts.repeats));
    if (opts.threads <= 0) {
        for (int rep = 0; rep < opts.repeats; ++rep) runs[static_cast<std::size_t>(rep)] = single_run(opts, n, rep);
        return runs;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> workers;
    for (int w = 0; w < std::min(opts.threads, opts.repeats); ++w) {
        workers.emplace_back([&] {
            for (int rep = next++; rep < opts.repeats; rep = next++) {
                runs[static_cast<std::size_t>(rep)] = single_run(opts, n, rep);
            }
        });
    }
    workers.clear();
    return runs;
}

std::string opt_num(const std::optional<double>& v) { return v ? fmt::format("{:.11f}", *v) : std::string(); }

std::string opt_gap(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string(); }

std::string opt_time(const std::optional<double>& v, bool with_times) {
    return (v && with_times) ? fmt::format("{:.3f}", *v) : std::string();
}

std::string hits_text(const BenchRow& row) {
    return row.hits ? fmt::format("{}/{}", *row.hits, row.repeats) : std::string("-");
}

}  // namespace

BenchReport run_bench(const BenchOptions& opts) {
    BenchReport report;
    for (int n : opts.sizes) {
        report.rows.push_back(aggregate(opts.family, n, run_repeats(opts, n), opts.records, opts.rel_tol));
    }
    return report;
}

std::string bench_csv(const BenchReport& report, bool with_times) {
    std::string out =
        "family,n,repeats,hits,best_L,average_L,record_PAS-PCI,record_Packomania,record_ASGO,"
        "gap_PAS-PCI_pct,gap_Packomania_pct,gap_ASGO_pct,best_time_s,average_time_s\n";
    for (const auto& row : report.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(row.family), row.n, row.repeats,
                           row.hits ? std::to_string(*row.hits) : std::string(), opt_num(row.best_L),
                           opt_num(row.average_L), opt_num(row.record_paspci), opt_num(row.record_packomania),
                           opt_num(row.record_asgo), opt_gap(row.gap(row.record_paspci)),
                           opt_gap(row.gap(row.record_packomania)), opt_gap(row.gap(row.record_asgo)),
                           opt_time(row.best_time, with_times), opt_time(row.average_time, with_times));
    }
    return out;
}

std::string bench_table(const BenchReport& report) {
    std::string out = fmt::format("{:>4}  {:>16}  {:>16}  {:>16}  {:>10}  {:>7}  {:>10}  {:>10}\n", "n", "best L",
                                  "PAS-PCI", "Packomania", "gap %", "hits", "best t(s)", "avg t(s)");
    for (const auto& row : report.rows) {
        out += fmt::format("{:>4}  {:>16}  {:>16}  {:>16}  {:>10}  {:>7}  {:>10}  {:>10}\n", row.n,
                           row.best_L ? opt_num(row.best_L) : "-", row.record_paspci ? opt_num(row.record_paspci) : "-",
                           row.record_packomania ? opt_num(row.record_packomania) : "-",
                           row.gap(row.record_paspci) ? opt_gap(row.gap(row.record_paspci)) : "-", hits_text(row),
                           row.best_time ? opt_time(row.best_time, true) : "-",
                           row.average_time ? opt_time(row.average_time, true) : "-");
    }
    return out;
}

std::vector<SweepRow> run_sweep(const BenchOptions& opts, const std::vector<int>& m_values) {
    std::vector<SweepRow> rows;
    for (int m : m_values) {
        BenchOptions o = opts;
        o.solver.selected = m;
        o.solver.initial_patterns = std::max(o.solver.initial_patterns, m);
        for (int n : opts.sizes) {
            rows.push_back({m, aggregate(o.family, n, run_repeats(o, n), o.records, o.rel_tol)});
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_times) {
    std::string out = "family,n,m,repeats,hits,average_time_s,best_L,worst_L,average_L\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.stats.family), r.stats.n, r.m, r.stats.repeats,
                           r.stats.hits ? std::to_string(*r.stats.hits) : std::string(),
                           opt_time(r.stats.average_time, with_times), opt_num(r.stats.best_L),
                           opt_num(r.stats.worst_L), opt_num(r.stats.average_L));
    }
    return out;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
    std::string out = fmt::format("{:>4}  {:>3}  {:>7}  {:>10}  {:>16}  {:>16}  {:>16}\n", "n", "m", "hits", "avg t(s)",
                                  "best L", "worst L", "average L");
    for (const auto& r : rows) {
        out += fmt::format("{:>4}  {:>3}  {:>7}  {:>10}  {:>16}  {:>16}  {:>16}\n", r.stats.n, r.m, hits_text(r.stats),
                           r.stats.average_time ? opt_time(r.stats.average_time, true) : "-",
                           r.stats.best_L ? opt_num(r.stats.best_L) : "-",
                           r.stats.worst_L ? opt_num(r.stats.worst_L) : "-",
                           r.stats.average_L ? opt_num(r.stats.average_L) : "-");
    }
    return out;
}

}  // namespace circlepack
