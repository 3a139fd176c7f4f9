#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "circlepack/hop.hpp"
#include "circlepack/instance.hpp"
#include "circlepack/model.hpp"
#include "circlepack/optim.hpp"

namespace circlepack {

struct TraceRecord {
    double seconds = 0.0;
    std::string phase;
    double best_energy = 0.0;
    std::size_t pool_size = 0;
};

struct SolverConfig {
    int initial_patterns = 32;  // G
    int selected = 3;           // m
    int hop_iterations = 20;    // k_p
    int perturb_loops = 5;      // k_b
    double alpha = 0.999;
    double bisection_tol = 1e-7;
    double energy_tol = 1e-20;
    double time_limit = std::numeric_limits<double>::infinity();  // seconds
    std::uint64_t seed = 0;
    /// 0 runs everything on the calling thread; N > 0 minimizes offspring on
    /// N worker threads. Results are identical either way unless the
    /// deadline cuts a batch short.
    int threads = 0;
    MinimizeConfig minimize{};
    HopConfig hop{};
    /// Called for every trace record as it is produced.
    std::function<void(const TraceRecord&)> on_trace;
};

/// Throws std::invalid_argument on inconsistent settings.
void validate(const SolverConfig& cfg);

struct SolveCounters {
    std::uint64_t lbfgs_calls = 0;
    std::uint64_t hop_batches = 0;
    std::uint64_t perturbations = 0;
    std::uint64_t restarts = 0;
};

struct SolveResult {
    std::optional<Pattern> best;
    double L = 0.0;
    double seconds = 0.0;
    SolveCounters counters;
    std::vector<TraceRecord> trace;
};

/// Indices of the m smallest energies, ascending; ties keep input order.
std::vector<std::size_t> select_lowest(std::span<const double> energies, std::size_t m);

/// Uniform centres, kept inside the container per axis when the circle fits.
Pattern random_pattern(std::shared_ptr<const Radii> radii, double side, Rng& rng);

struct PostProcessResult {
    Pattern pattern;
    double L;
    double lower;  // last container size that failed
    int probes;
};

/// Shrinks by alpha while a feasible pattern is recovered, then bisects
/// between the last failure and the last success. Throws
/// std::invalid_argument if the input is not below the energy tolerance.
PostProcessResult post_process(const Pattern& pattern, const SolverConfig& cfg);

SolveResult solve(std::shared_ptr<const Radii> radii, double L0, const SolverConfig& cfg);
SolveResult solve(const Instance& instance, double L0, const SolverConfig& cfg);

/// Side of a square that provably holds all circles: next-fit shelf
/// packing of their bounding boxes, minimized over shelf widths.
double shelf_upper_bound(std::span<const double> radii);

/// known_best when tabulated, otherwise shelf_upper_bound.
double default_container_size(const Instance& instance);

/// Independent generator for restart `stream` of a run seeded with `seed`.
Rng substream(std::uint64_t seed, std::uint64_t stream);

}  // namespace circlepack
