#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circlepack/instance.hpp"
#include "circlepack/search.hpp"

namespace circlepack {

/// (found - record) / record * 100.
double gap_percent(double found, double record);

/// A run hits when it reaches L <= record * (1 + rel_tol).
bool is_hit(double found, double record, double rel_tol);

struct BenchRun {
    std::uint64_t seed = 0;
    bool feasible = false;
    double L = 0.0;
    double seconds = 0.0;
    bool hit = false;
};

struct BenchRow {
    Family family = Family::Linear;
    int n = 0;
    int repeats = 0;
    std::optional<int> hits;  // absent when no record exists for the row
    std::optional<double> best_L;
    std::optional<double> average_L;
    std::optional<double> worst_L;
    std::optional<double> record_paspci;
    std::optional<double> record_packomania;
    std::optional<double> record_asgo;
    std::optional<double> best_time;     // over hits
    std::optional<double> average_time;  // over hits
    std::vector<BenchRun> runs;

    [[nodiscard]] std::optional<double> gap(const std::optional<double>& record) const;
};

struct BenchOptions {
    Family family = Family::Linear;
    std::vector<int> sizes;
    int repeats = 10;
    double time_per_run = 600.0;
    std::uint64_t seed = 0;
    double rel_tol = 1e-6;
    /// 0: every run serial on this thread. N > 0: N runs at a time.
    int threads = 0;
    SolverConfig solver{};
    RecordsTable records = RecordsTable::builtin();
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

/// Seed of repeat `rep` for circle count n under master seed `seed`.
std::uint64_t bench_run_seed(std::uint64_t seed, int n, int rep);

/// Starting container size for a bench run: the PAS-PCI record scaled by
/// (1 + rel_tol), or the shelf bound when the row has no record.
double bench_start_size(const BenchOptions& opts, int n);

BenchRow aggregate(Family family, int n, std::vector<BenchRun> runs, const RecordsTable& records, double rel_tol);

BenchReport run_bench(const BenchOptions& opts);

/// CSV, numbers printed with 11 decimals. Timing columns are left empty
/// when `with_times` is false so reproducible runs produce identical files.
std::string bench_csv(const BenchReport& report, bool with_times);
std::string bench_table(const BenchReport& report);

struct SweepRow {
    int m = 0;
    BenchRow stats;
};

std::vector<SweepRow> run_sweep(const BenchOptions& opts, const std::vector<int>& m_values);
std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_times);
std::string sweep_table(const std::vector<SweepRow>& rows);

}  // namespace circlepack
