#include <doctest.h>

#include <cmath>
#include <random>

#include "circlepack/bench.hpp"
#include "circlepack/io.hpp"
#include "support/oracles.hpp"

using namespace circlepack;

namespace {

SolutionFile two_circles() {
    const std::vector<Point> c{{-1, 0}, {1, 0}};
    const Pattern p(std::make_shared<const Radii>(Radii{1, 1}), c, 4.0);
    return to_solution_file(p, std::nullopt, 3, std::nullopt);
}

SolutionFile random_solution(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 30);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::uniform_real_distribution<double> rad(1e-3, 50.0);
    SolutionFile s;
    s.n = count(rng);
    s.L = std::abs(u(rng)) + 1.0;
    s.version = "0.1.0";
    s.seed = rng();
    if (rng() % 2) s.wall_time = std::abs(u(rng));
    if (rng() % 3 == 0) s.family = Family::Sqrt;
    for (int i = 1; i <= s.n; ++i) s.rows.push_back({i, rad(rng), u(rng), u(rng)});
    return s;
}

std::size_t count_lines(const std::string& s, std::string_view prefix) {
    std::size_t k = 0;
    std::size_t pos = 0;
    while ((pos = s.find(prefix, pos)) != std::string::npos) {
        ++k;
        pos += prefix.size();
    }
    return k;
}

}  // namespace

TEST_CASE("solution round trip") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_solution(rng);
        REQUIRE(parse_solution(serialize_solution(s)) == s);
    }
}

TEST_CASE("solution from a pattern uses 1-based indices") {
    const auto inst = make_instance(Family::Linear, 3);
    const std::vector<Point> c{{0, 0}, {3, 0}, {-4, 4}};
    const Pattern p(std::make_shared<const Radii>(inst.radii), c, 12.0);
    const auto s = to_solution_file(p, Family::Linear, 9, 1.5);
    CHECK(s.n == 3);
    CHECK(s.rows.front().index == 1);
    CHECK(s.rows.back().r == 3.0);
    CHECK(to_pattern(s) == p);
    const auto text = serialize_solution(s);
    CHECK(text.find("\"family\": \"linear\"") != std::string::npos);
    CHECK(text.find("\"wall_time\": 1.5") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string bad = "{\n  \"format\": \"circlepack-solution\",\n  \"n\": ,\n}";
    try {
        parse_solution(bad);
        FAIL("expected a parse error");
    } catch (const SolutionParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 8);
    }
}

TEST_CASE("schema errors are rejected") {
    auto text = serialize_solution(two_circles());
    CHECK_THROWS_AS(parse_solution("[]"), SolutionParseError);
    auto broken = text;
    broken.replace(broken.find("\"n\": 2"), 6, "\"n\": 3");
    CHECK_THROWS_AS(parse_solution(broken), SolutionParseError);
    broken = text;
    broken.replace(broken.find("\"r\": 1"), 6, "\"r\": -1");
    CHECK_THROWS_AS(parse_solution(broken), SolutionParseError);
}

TEST_CASE("plain text export") {
    const auto txt = to_plain_text(two_circles());
    CHECK(txt == "1 -1 0 1\n2 1 0 1\n");
}

TEST_CASE("verify agrees with is_feasible") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = oracle::random_pattern(rng, 2 + trial % 10, 15.0 + trial % 10);
        const auto s = to_solution_file(p, std::nullopt, 0, std::nullopt);
        for (double tol : {0.0, 1e-9, 0.05}) {
            REQUIRE(verify_solution(s, tol).ok == is_feasible(p, tol));
        }
    }
}

TEST_CASE("verify names the offending pair or border") {
    auto s = two_circles();
    auto rep = verify_solution(s, 1e-9);
    CHECK(rep.ok);
    CHECK(rep.energy == 0.0);

    s.rows[1].x = 0.5;
    rep = verify_solution(s, 1e-9);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst_item == "pair 1-2");
    CHECK(rep.worst_depth == doctest::Approx(0.5));
    CHECK(rep.energy == doctest::Approx(0.25));

    s = two_circles();
    s.rows[0].y = 1.5;
    rep = verify_solution(s, 1e-9);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst_item == "circle 1 / horizontal border");
    CHECK(rep.max_pain_circle == 1);
}

TEST_CASE("verify checks radii against the family") {
    auto s = two_circles();
    s.family = Family::Linear;
    const auto rep = verify_solution(s, 1e-9);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.issues.empty());
}

TEST_CASE("svg output") {
    const auto s = two_circles();
    const auto a = render_svg(s);
    CHECK(a == render_svg(s));
    CHECK(count_lines(a, "<circle") == 2);
    CHECK(a.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    CHECK(a.find(">2</text>") != std::string::npos);

    SolutionFile one;
    one.n = 1;
    one.L = 2.0;
    one.rows.push_back({1, 1.0, 0.0, 0.0});
    const auto b = render_svg(one);
    CHECK(count_lines(b, "<circle") == 1);
    CHECK(b.find("r=\"500.0000\"") != std::string::npos);
}

TEST_CASE("write_file reports unwritable paths") {
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.json", "{}"), std::runtime_error);
}

TEST_CASE("gap and hit") {
    CHECK(gap_percent(61.84992131, 61.84992131) == 0.0);
    CHECK(gap_percent(62.0, 61.84992131) == doctest::Approx(0.24264819));
    CHECK(gap_percent(21.0, 21.29813169) == doctest::Approx(-1.39980054));
    CHECK(is_hit(61.85, 61.84992131, 1e-5));
    CHECK_FALSE(is_hit(61.86, 61.84992131, 1e-6));
}

TEST_CASE("aggregate follows the table definitions") {
    const auto records = RecordsTable::builtin();
    std::vector<BenchRun> runs{{1, true, 61.84992131, 10.0, false},
                               {2, true, 62.5, 20.0, false},
                               {3, false, 0.0, 600.0, false},
                               {4, true, 61.8499213, 30.0, false}};
    const auto row = aggregate(Family::Linear, 14, runs, records, 1e-6);
    CHECK(row.hits == 2);
    CHECK(row.repeats == 4);
    CHECK(*row.best_L == 61.8499213);
    CHECK(*row.worst_L == 62.5);
    CHECK(*row.average_L == doctest::Approx((61.84992131 + 62.5 + 61.8499213) / 3));
    CHECK(*row.best_time == 10.0);
    CHECK(*row.average_time == 20.0);
    CHECK(*row.gap(row.record_paspci) == doctest::Approx(gap_percent(61.8499213, 61.84992131)));
    CHECK_FALSE(row.record_asgo.has_value());  // the ASGO column has no n = 14 entry

    const auto none = aggregate(Family::Linear, 5, {{1, true, 9.0, 1.0, false}}, records, 1e-6);
    CHECK_FALSE(none.hits.has_value());
    CHECK_FALSE(none.gap(none.record_paspci).has_value());
}

TEST_CASE("bench csv shape and reproducibility") {
    BenchOptions opts;
    opts.family = Family::Linear;
    opts.sizes = {5, 6, 7};
    opts.repeats = 2;
    opts.time_per_run = 60.0;
    opts.seed = 11;
    const auto a = run_bench(opts);
    const auto b = run_bench(opts);
    const auto csv = bench_csv(a, false);
    CHECK(csv == bench_csv(b, false));
    CHECK(count_lines(csv, "\n") == 4);
    CHECK(csv.rfind("family,n,repeats,hits,", 0) == 0);
    for (const auto& row : a.rows) {
        CHECK(row.runs.size() == 2);
        CHECK_FALSE(row.hits.has_value());
        CHECK(row.best_L.has_value());
    }
    CHECK_FALSE(bench_table(a).empty());
}

TEST_CASE("bench rows with records count hits") {
    BenchOptions opts;
    opts.family = Family::Linear;
    opts.sizes = {14, 15, 16};
    opts.repeats = 3;
    opts.time_per_run = 1.0;
    const auto report = run_bench(opts);
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) {
        REQUIRE(row.hits.has_value());
        CHECK(*row.hits <= 3);
        CHECK(row.record_paspci.has_value());
    }
    CHECK(count_lines(bench_csv(report, true), "\n") == 4);
}

TEST_CASE("sweep csv") {
    BenchOptions opts;
    opts.sizes = {6};
    opts.repeats = 1;
    opts.time_per_run = 60.0;
    const auto rows = run_sweep(opts, {1, 3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].m == 1);
    const auto csv = sweep_csv(rows, false);
    CHECK(count_lines(csv, "\n") == 3);
    CHECK_FALSE(sweep_table(rows).empty());
}
