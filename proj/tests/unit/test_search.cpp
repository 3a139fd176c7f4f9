#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "circlepack/instance.hpp"
#include "circlepack/relax.hpp"
#include "circlepack/search.hpp"
#include "support/oracles.hpp"

using namespace circlepack;

namespace {

std::shared_ptr<const Radii> radii_of(Radii r) { return std::make_shared<const Radii>(std::move(r)); }

double ks_uniform(std::vector<double> xs, double lo, double hi) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double f = (xs[k] - lo) / (hi - lo);
        d = std::max({d, f - static_cast<double>(k) / n, static_cast<double>(k + 1) / n - f});
    }
    return d;
}

SolverConfig quick(std::uint64_t seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.time_limit = 60.0;
    return cfg;
}

}  // namespace

TEST_CASE("random_pattern stays inside when circles fit") {
    Rng rng(1);
    const auto p = random_pattern(radii_of({1}), 3.0, rng);
    CHECK(is_feasible(p, 0.0));
    CHECK(std::abs(p.center(0).x) <= 0.5);

    const auto big = random_pattern(radii_of({5}), 4.0, rng);
    CHECK(std::abs(big.center(0).x) <= 2.0);
    CHECK_THROWS_AS(random_pattern(radii_of({1}), 0.0, rng), std::invalid_argument);
}

TEST_CASE("random_pattern is reproducible") {
    Rng a(42), b(42);
    CHECK(random_pattern(radii_of({1, 2, 3}), 10, a) == random_pattern(radii_of({1, 2, 3}), 10, b));
}

TEST_CASE("random_pattern centres are uniform per axis") {
    const Radii r{0.5, 1.0, 1.5, 2.0, 2.5};
    const double L = 12.0;
    Rng rng(2024);
    std::vector<std::vector<double>> xs(5), ys(5);
    for (int s = 0; s < 1000; ++s) {
        const auto p = random_pattern(radii_of(r), L, rng);
        for (std::size_t i = 0; i < 5; ++i) {
            xs[i].push_back(p.center(i).x);
            ys[i].push_back(p.center(i).y);
        }
    }
    // 99.9% critical value for n = 1000.
    const double crit = 1.95 / std::sqrt(1000.0);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(ks_uniform(xs[i], -L / 2 + r[i], L / 2 - r[i]) < crit);
        CHECK(ks_uniform(ys[i], -L / 2 + r[i], L / 2 - r[i]) < crit);
    }
}

TEST_CASE("select_lowest") {
    const std::vector<double> e{3, 1, 2, 1, 0.5};
    CHECK(select_lowest(e, 3) == std::vector<std::size_t>{4, 1, 3});
    CHECK(select_lowest(e, 10).size() == 5);
    CHECK(select_lowest({}, 3).empty());
}

TEST_CASE("substreams differ and repeat") {
    auto a = substream(7, 0);
    auto b = substream(7, 0);
    auto c = substream(7, 1);
    auto d = substream(8, 0);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
}

TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.selected = 40;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.bisection_tol = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.threads = -1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("shelf bound holds every circle") {
    CHECK(shelf_upper_bound(std::vector<double>{1.0}) == doctest::Approx(2.0));
    CHECK(shelf_upper_bound(std::vector<double>{1.0, 1.0}) == doctest::Approx(4.0));
    CHECK_THROWS_AS(shelf_upper_bound(std::vector<double>{}), std::invalid_argument);
    for (int n = 1; n <= 60; ++n) {
        const auto inst = make_instance(Family::Linear, n);
        double area = 0.0;
        for (double r : inst.radii) area += 4 * r * r;
        const double L = shelf_upper_bound(inst.radii);
        REQUIRE(L * L >= area);
        REQUIRE(L >= 2 * inst.radii.back());
        if (n >= 14 && n <= 72) REQUIRE(L >= known_best(Family::Linear, n).value());
    }
}

TEST_CASE("default container size prefers the record") {
    CHECK(default_container_size(make_instance(Family::Linear, 14)) == doctest::Approx(61.84992131));
    const auto inst = make_instance(Family::Linear, 5);
    CHECK(default_container_size(inst) == shelf_upper_bound(inst.radii));
}

TEST_CASE("post_process: single circle shrinks to its diameter") {
    const std::vector<Point> c{{0.2, -0.1}};
    const Pattern p(radii_of({1}), c, 3.0);
    const auto r = post_process(p, {});
    CHECK(r.L == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.L <= 3.0);
    CHECK(r.L - r.lower < 1e-7);
    CHECK(is_feasible(r.pattern, 1e-9));
    CHECK(r.pattern.side() == r.L);
}

TEST_CASE("post_process: two unit circles reach the diagonal packing") {
    const std::vector<Point> c{{-1.2, -1.0}, {1.1, 1.3}};
    const Pattern p(radii_of({1, 1}), c, 5.0);
    const auto r = post_process(p, {});
    CHECK(std::abs(r.L - (2.0 + std::sqrt(2.0))) < 1e-5);
    CHECK(r.L - r.lower < 1e-7);
    CHECK(is_feasible(r.pattern, 1e-9));
}

TEST_CASE("post_process never grows the container") {
    std::mt19937_64 seeds(5);
    for (int trial = 0; trial < 8; ++trial) {
        const auto inst = make_instance(trial % 2 ? Family::Sqrt : Family::Linear, 3 + trial);
        Rng rng(seeds());
        auto relaxed = relax(random_pattern(std::make_shared<const Radii>(inst.radii), 2 * shelf_upper_bound(inst.radii), rng));
        if (!(relaxed.energy < 1e-20)) continue;
        const auto r = post_process(relaxed.pattern, {});
        REQUIRE(r.L <= relaxed.pattern.side());
        REQUIRE(r.L - r.lower < 1e-7);
        REQUIRE(r.lower < r.L);
        REQUIRE(is_feasible(r.pattern, 1e-9));
    }
}

TEST_CASE("post_process rejects infeasible input") {
    const std::vector<Point> c{{0, 0}, {0, 0}};
    CHECK_THROWS_AS(post_process(Pattern(radii_of({1, 1}), c, 5.0), {}), std::invalid_argument);
}

TEST_CASE("solve: zero time returns nothing") {
    SolverConfig cfg;
    cfg.time_limit = 0.0;
    const auto r = solve(make_instance(Family::Linear, 14), 61.85, cfg);
    CHECK_FALSE(r.best.has_value());
    CHECK(r.counters.lbfgs_calls == 0);
    CHECK(r.counters.hop_batches == 0);
    CHECK(r.counters.perturbations == 0);
    CHECK(r.counters.restarts == 0);
}

TEST_CASE("solve: loose container is solved from the initial patterns") {
    const auto r = solve(make_instance(Family::Linear, 4), 30.0, quick(1));
    REQUIRE(r.best.has_value());
    CHECK(r.L <= 30.0);
    CHECK(is_feasible(*r.best, 1e-9));
    CHECK(r.counters.hop_batches == 0);
    CHECK(r.best->side() == r.L);
    CHECK(r.trace.back().phase == "post-process");
}

TEST_CASE("solve: small cases through hopping") {
    for (int n : {1, 2, 3, 5, 8}) {
        const auto inst = make_instance(Family::Linear, n);
        const auto r = solve(inst, shelf_upper_bound(inst.radii), quick(static_cast<std::uint64_t>(n)));
        CAPTURE(n);
        REQUIRE(r.best.has_value());
        CHECK(is_feasible(*r.best, 1e-9));
        CHECK(r.best->radii() == inst.radii);
    }
}

TEST_CASE("solve is reproducible in serial mode") {
    const auto inst = make_instance(Family::Sqrt, 9);
    auto cfg = quick(3);
    const double L0 = 0.999 * shelf_upper_bound(inst.radii);
    const auto a = solve(inst, L0, cfg);
    const auto b = solve(inst, L0, cfg);
    REQUIRE(a.best.has_value());
    REQUIRE(b.best.has_value());
    CHECK(*a.best == *b.best);
    CHECK(a.L == b.L);
    CHECK(a.counters.lbfgs_calls == b.counters.lbfgs_calls);
}

TEST_CASE("threaded offspring minimization agrees with serial") {
    const auto inst = make_instance(Family::Linear, 10);
    const double L0 = 0.95 * shelf_upper_bound(inst.radii);
    auto serial = quick(4);
    auto threaded = quick(4);
    threaded.threads = 2;
    const auto a = solve(inst, L0, serial);
    const auto b = solve(inst, L0, threaded);
    REQUIRE(a.best.has_value());
    REQUIRE(b.best.has_value());
    CHECK(*a.best == *b.best);
}

TEST_CASE("trace reports phases in order") {
    std::vector<std::string> phases;
    auto cfg = quick(5);
    cfg.on_trace = [&](const TraceRecord& r) { phases.push_back(r.phase); };
    const auto inst = make_instance(Family::Linear, 6);
    const auto r = solve(inst, shelf_upper_bound(inst.radii) * 0.9, cfg);
    REQUIRE(r.best.has_value());
    REQUIRE(phases.size() == r.trace.size());
    CHECK(phases.back() == "post-process");
    CHECK(std::find(phases.begin(), phases.end(), "feasible") != phases.end());
}
