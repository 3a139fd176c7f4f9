#include "circlepack/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "circlepack/actionspace.hpp"
#include "circlepack/perturb.hpp"
#include "circlepack/relax.hpp"

namespace circlepack {

void validate(const SolverConfig& cfg) {
    if (cfg.selected < 1 || cfg.initial_patterns < cfg.selected) {
        throw std::invalid_argument("SolverConfig: need G >= m >= 1");
    }
    if (cfg.hop_iterations < 0 || cfg.perturb_loops < 0) throw std::invalid_argument("SolverConfig: negative loop count");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("SolverConfig: alpha must lie in (0, 1)");
    if (!(cfg.bisection_tol > 0.0) || !(cfg.energy_tol > 0.0)) {
        throw std::invalid_argument("SolverConfig: tolerances must be positive");
    }
    if (cfg.threads < 0) throw std::invalid_argument("SolverConfig: threads must be >= 0");
    validate(cfg.minimize);
}

Rng substream(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return Rng(z);
}

Pattern random_pattern(std::shared_ptr<const Radii> radii, double side, Rng& rng) {
    if (!(side > 0.0)) throw std::invalid_argument("random_pattern: side must be positive");
    const double half = 0.5 * side;
    std::vector<double> coords;
    coords.reserve(2 * radii->size());
    for (double r : *radii) {
        double lo = -half + r;
        double hi = half - r;
        if (lo > hi) {
            lo = -half;
            hi = half;
        }
        std::uniform_real_distribution<double> axis(lo, hi);
        coords.push_back(axis(rng));
        coords.push_back(axis(rng));
    }
    return Pattern(std::move(radii), std::move(coords), side);
}

PostProcessResult post_process(const Pattern& pattern, const SolverConfig& cfg) {
    validate(cfg);
    if (!(energy_value(pattern.radii(), pattern.coords(), pattern.side()) < cfg.energy_tol)) {
        throw std::invalid_argument("post_process: input pattern is not feasible");
    }
    MinimizeConfig mc = cfg.minimize;
    mc.energy_tol = cfg.energy_tol;

    Pattern best = pattern;
    double upper = pattern.side();
    double lower = upper;
    int probes = 0;
    auto probe = [&](double side) -> bool {
        Pattern trial = best;
        trial.set_side(side);
        auto r = relax(trial, mc);
        ++probes;
        if (r.energy < cfg.energy_tol) {
            best = std::move(r.pattern);
            return true;
        }
        return false;
    };

    while (true) {
        const double next = cfg.alpha * upper;
        if (!probe(next)) {
            lower = next;
            break;
        }
        upper = next;
    }
    while (upper - lower >= cfg.bisection_tol) {
        const double mid = 0.5 * (upper + lower);
        if (mid <= lower || mid >= upper) break;
        if (probe(mid)) {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    return {std::move(best), upper, lower, probes};
}

std::vector<std::size_t> select_lowest(std::span<const double> energies, std::size_t m) {
    std::vector<std::size_t> order(energies.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return energies[a] < energies[b]; });
    if (order.size() > m) order.resize(m);
    return order;
}

double shelf_upper_bound(std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("shelf_upper_bound: no circles");
    std::vector<double> d;
    d.reserve(radii.size());
    for (double r : radii) d.push_back(2.0 * r);
    std::sort(d.begin(), d.end(), std::greater<>());
    double total = 0.0;
    for (double e : d) total += e;

    auto height_for = [&](double width) {
        double height = 0.0;
        double row = 0.0;
        double row_height = 0.0;
        for (double e : d) {
            if (row > 0.0 && row + e > width) {
                height += row_height;
                row = 0.0;
            }
            if (row == 0.0) row_height = e;
            row += e;
        }
        return height + row_height;
    };

    double best = std::max(total, d.front());
    constexpr int kSteps = 400;
    for (int k = 0; k <= kSteps; ++k) {
        const double width = d.front() + (total - d.front()) * static_cast<double>(k) / kSteps;
        best = std::min(best, std::max(width, height_for(width)));
    }
    return best;
}

double default_container_size(const Instance& instance) {
    if (auto L = known_best(instance.family, static_cast<int>(instance.size()))) return *L;
    return shelf_upper_bound(instance.radii);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Entry {
    Pattern pattern;
    double energy;
    PartitionSets sets;
};

class Run {
public:
    Run(std::shared_ptr<const Radii> radii, double L0, const SolverConfig& cfg)
        : radii_(std::move(radii)), L0_(L0), cfg_(cfg), start_(Clock::now()) {
        mc_ = cfg.minimize;
        mc_.energy_tol = cfg.energy_tol;
        if (std::isfinite(cfg.time_limit)) {
            deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.time_limit));
            has_deadline_ = true;
        }
    }

    SolveResult execute() {
        if (cfg_.time_limit <= 0.0) return finish_empty();
        const bool can_hop = radii_->size() >= 4;
        std::optional<PartitionSets> base_sets;
        if (can_hop) base_sets = partition_sets(*radii_);

        for (std::uint64_t restart = 0;; ++restart) {
            if (restart > 0) {
                ++result_.counters.restarts;
                trace("restart", best_energy_, 0);
            }
            Rng rng = substream(cfg_.seed, restart);
            std::vector<Entry> pool;
            for (int g = 0; g < cfg_.initial_patterns; ++g) {
                if (expired()) return finish_empty();
                auto relaxed = relax_counted(random_pattern(radii_, L0_, rng));
                if (relaxed.energy < cfg_.energy_tol) return finish_feasible(relaxed.pattern);
                pool.push_back({std::move(relaxed.pattern), relaxed.energy, base_sets.value_or(PartitionSets{})});
            }
            note_pool(pool);
            trace("initial", best_energy_, pool.size());
            if (!can_hop) continue;

            for (int kb = 0; kb < cfg_.perturb_loops; ++kb) {
                for (int kp = 0; kp < cfg_.hop_iterations; ++kp) {
                    keep_best(pool);
                    std::vector<Entry> offspring;
                    for (auto& parent : pool) {
                        PartitionSets sets = parent.sets;
                        const auto lists = space_lists_for(parent.pattern);
                        auto batch = generate_neighbors(parent.pattern, sets, lists, rng, cfg_.hop);
                        ++result_.counters.hop_batches;
                        for (auto& nb : batch.patterns) offspring.push_back({std::move(nb.pattern), 0.0, sets});
                    }
                    auto feasible = minimize_all(offspring);
                    if (feasible) return finish_feasible(offspring[*feasible].pattern);
                    if (expired()) return finish_empty();
                    for (auto& e : offspring) pool.push_back(std::move(e));
                    keep_best(pool);
                    note_pool(pool);
                    trace("hop", best_energy_, pool.size());
                }
                keep_best(pool);
                for (auto& entry : pool) {
                    if (expired()) return finish_empty();
                    auto p = perturb(entry.pattern, entry.sets, mc_);
                    ++result_.counters.perturbations;
                    ++result_.counters.lbfgs_calls;
                    if (p.energy < cfg_.energy_tol) return finish_feasible(p.pattern);
                    entry.pattern = std::move(p.pattern);
                    entry.energy = p.energy;
                    entry.sets.tabu.clear();
                }
                note_pool(pool);
                trace("perturb", best_energy_, pool.size());
            }
        }
    }

private:
    bool expired() const { return has_deadline_ && Clock::now() >= deadline_; }

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    void trace(const char* phase, double best, std::size_t pool_size) {
        TraceRecord rec{elapsed(), phase, best, pool_size};
        if (cfg_.on_trace) cfg_.on_trace(rec);
        result_.trace.push_back(std::move(rec));
    }

    void note_pool(const std::vector<Entry>& pool) {
        for (const auto& e : pool) best_energy_ = std::min(best_energy_, e.energy);
    }

    Relaxed relax_counted(const Pattern& p) {
        ++result_.counters.lbfgs_calls;
        return relax(p, mc_);
    }

    void keep_best(std::vector<Entry>& pool) const {
        std::vector<double> energies;
        energies.reserve(pool.size());
        for (const auto& e : pool) energies.push_back(e.energy);
        std::vector<Entry> kept;
        for (auto k : select_lowest(energies, static_cast<std::size_t>(cfg_.selected))) kept.push_back(std::move(pool[k]));
        pool = std::move(kept);
    }

    // Minimizes every entry in place. Returns the first feasible index in
    // generation order, if any.
    std::optional<std::size_t> minimize_all(std::vector<Entry>& entries) {
        if (cfg_.threads == 0 || entries.size() < 2) {
            for (std::size_t k = 0; k < entries.size(); ++k) {
                if (expired()) {
                    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(k), entries.end());
                    return std::nullopt;
                }
                auto r = relax_counted(entries[k].pattern);
                entries[k].pattern = std::move(r.pattern);
                entries[k].energy = r.energy;
                if (r.energy < cfg_.energy_tol) return k;
            }
            return std::nullopt;
        }

        std::vector<char> done(entries.size(), 0);
        std::atomic<std::size_t> next{0};
        std::atomic<std::uint64_t> calls{0};
        {
            std::vector<std::jthread> workers;
            const auto count = static_cast<std::size_t>(cfg_.threads);
            for (std::size_t w = 0; w < std::min(count, entries.size()); ++w) {
                workers.emplace_back([&] {
                    for (std::size_t k = next++; k < entries.size(); k = next++) {
                        if (expired()) return;
                        auto r = relax(entries[k].pattern, mc_);
                        calls.fetch_add(1, std::memory_order_relaxed);
                        entries[k].pattern = std::move(r.pattern);
                        entries[k].energy = r.energy;
                        done[k] = 1;
                    }
                });
            }
        }
        result_.counters.lbfgs_calls += calls.load();
        for (std::size_t k = 0; k < entries.size(); ++k) {
            if (done[k] && entries[k].energy < cfg_.energy_tol) return k;
        }
        std::vector<Entry> finished;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            if (done[k]) finished.push_back(std::move(entries[k]));
        }
        entries = std::move(finished);
        return std::nullopt;
    }

    SolveResult finish_empty() {
        result_.L = L0_;
        result_.seconds = elapsed();
        trace("deadline", best_energy_, 0);
        return std::move(result_);
    }

    SolveResult finish_feasible(const Pattern& feasible) {
        trace("feasible", 0.0, 1);
        auto post = post_process(feasible, cfg_);
        result_.counters.lbfgs_calls += static_cast<std::uint64_t>(post.probes);
        result_.L = post.L;
        result_.best = std::move(post.pattern);
        result_.seconds = elapsed();
        trace("post-process", 0.0, 1);
        return std::move(result_);
    }

    std::shared_ptr<const Radii> radii_;
    double L0_;
    const SolverConfig& cfg_;
    MinimizeConfig mc_;
    Clock::time_point start_;
    Clock::time_point deadline_{};
    bool has_deadline_ = false;
    double best_energy_ = std::numeric_limits<double>::infinity();
    SolveResult result_;
};

}  // namespace

SolveResult solve(std::shared_ptr<const Radii> radii, double L0, const SolverConfig& cfg) {
    validate(cfg);
    if (!radii || radii->empty()) throw std::invalid_argument("solve: no circles");
    if (!(L0 > 0.0) || !std::isfinite(L0)) throw std::invalid_argument("solve: L0 must be positive");
    return Run(std::move(radii), L0, cfg).execute();
}

SolveResult solve(const Instance& instance, double L0, const SolverConfig& cfg) {
    return solve(std::make_shared<const Radii>(instance.radii), L0, cfg);
}

}  // namespace circlepack
