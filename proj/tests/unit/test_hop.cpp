#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "circlepack/hop.hpp"
#include "circlepack/instance.hpp"
#include "support/oracles.hpp"

using namespace circlepack;

namespace {

Rect rect(double x1, double y1, double x2, double y2) { return {{x1, y1}, {x2, y2}}; }

Pattern linear_pattern(std::size_t n, double L, std::uint64_t seed) {
    auto radii = std::make_shared<const Radii>(make_instance(Family::Linear, static_cast<int>(n)).radii);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-L / 2, L / 2);
    std::vector<double> coords;
    for (std::size_t i = 0; i < 2 * n; ++i) coords.push_back(pos(rng));
    return Pattern(radii, coords, L);
}

std::map<MoveKind, int> counts(const HopBatch& batch) {
    std::map<MoveKind, int> out;
    for (const auto& nb : batch.patterns) ++out[nb.kind];
    return out;
}

std::size_t changed_centers(const Pattern& a, const Pattern& b) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) k += !(a.center(i) == b.center(i));
    return k;
}

// Crafted lists where every space is square, so nothing is narrow.
SpaceLists square_lists() {
    SpaceLists lists;
    for (int k = 0; k < 3; ++k) {
        lists.by_min_side.push_back(rect(k, 0, k + 1, 1));
        lists.by_semi_perimeter.push_back(rect(k, 0, k + 1, 1));
    }
    return lists;
}

SpaceLists lists_with_narrow() {
    SpaceLists lists = square_lists();
    lists.by_semi_perimeter.insert(lists.by_semi_perimeter.begin(), rect(-5, -5, 5, -4));
    return lists;
}

}  // namespace

TEST_CASE("place_item_in_space") {
    const auto p = linear_pattern(5, 20, 1);
    const auto q = place_item_in_space(p, 2, rect(0, 0, 2, 2));
    CHECK(q.center(2) == Point{1, 1});
    CHECK(changed_centers(p, q) == 1);
    const auto c = p.center(3);
    CHECK(place_item_in_space(p, 3, rect(c.x - 1, c.y - 2, c.x + 1, c.y + 2)) == p);
}

TEST_CASE("relocating a jammer and relaxing separates two overlapping circles") {
    const std::vector<Point> c{{0, 0}, {0, 0}};
    const Pattern p(std::make_shared<const Radii>(Radii{1, 1}), c, 10);
    const auto lists = space_lists_for(p);
    const auto q = place_item_in_space(p, 1, lists.by_min_side.front());
    CHECK(energy(q).total == 0.0);
}

TEST_CASE("neighbour_space_occupy") {
    const auto p = linear_pattern(5, 20, 2);
    auto q = neighbour_space_occupy(p, 1, 3, rect(0, 0, 4, 1));
    CHECK(q.center(1) == Point{1, 0.5});
    CHECK(q.center(3) == Point{3, 0.5});
    q = neighbour_space_occupy(p, 1, 3, rect(0, 0, 1, 6));
    CHECK(q.center(1) == Point{0.5, 1.5});
    CHECK(q.center(3) == Point{0.5, 4.5});
    CHECK_THROWS_AS(neighbour_space_occupy(p, 2, 2, rect(0, 0, 4, 1)), std::invalid_argument);
    CHECK_THROWS_AS(neighbour_space_occupy(p, 1, 2, rect(0, 0, 1, 1)), std::invalid_argument);
}

TEST_CASE("swap_circles") {
    const auto p = linear_pattern(6, 12, 3);
    CHECK(swap_circles(swap_circles(p, 1, 4), 1, 4) == p);
    CHECK_THROWS_AS(swap_circles(p, 2, 2), std::invalid_argument);

    const std::vector<Point> eq{{0, 0}, {1, 0}, {5, 5}};
    const Pattern same(std::make_shared<const Radii>(Radii{1, 1, 2}), eq, 20);
    CHECK(energy(swap_circles(same, 0, 1)).total == energy(same).total);

    // Small circle nested in a corner, large one in the middle: swapping
    // pushes the large circle through the border.
    const std::vector<Point> tight{{4.5, 4.5}, {0, 0}};
    const Pattern t(std::make_shared<const Radii>(Radii{0.5, 3}), tight, 10);
    CHECK(energy(t).total == 0.0);
    CHECK(energy(swap_circles(t, 0, 1)).total > 0.0);
}

TEST_CASE("full batch has 43 moves with the enumerated block sizes") {
    auto p = linear_pattern(12, 25, 4);
    auto sets = partition_sets(p.radii());
    Rng rng(1);
    const auto batch = generate_neighbors(p, sets, lists_with_narrow(), rng);
    CHECK(batch.patterns.size() == 43);
    auto c = counts(batch);
    for (auto k : {MoveKind::RelocateLargestL1, MoveKind::RelocateLargestL2, MoveKind::RelocateBestL1,
                   MoveKind::RelocateBestL2, MoveKind::RelocateRandomL1, MoveKind::RelocateRandomL2}) {
        CHECK(c[k] == 4);
    }
    for (auto k : {MoveKind::NsoS1PairLargest, MoveKind::NsoS1PairBestMatch, MoveKind::NsoS1PairRandom,
                   MoveKind::NsoS1S2Largest, MoveKind::NsoS1S2BestForS1, MoveKind::NsoS1S2BestForS2}) {
        CHECK(c[k] == 1);
    }
    CHECK(c[MoveKind::CrossSetPairSwap] == 5);
    CHECK(c[MoveKind::AdjacentSwap] == 4);
    CHECK(c[MoveKind::RandomSwapInSet] == 4);
    CHECK(batch.jammers.size() == 4);
}

TEST_CASE("no narrow space drops the neighbour-space moves") {
    auto p = linear_pattern(12, 25, 5);
    auto sets = partition_sets(p.radii());
    Rng rng(2);
    const auto lists = square_lists();
    REQUIRE(narrow_spaces(lists).empty());
    const auto batch = generate_neighbors(p, sets, lists, rng);
    CHECK(batch.patterns.size() == 37);
}

TEST_CASE("omitting random in-set swaps gives 39") {
    auto p = linear_pattern(12, 25, 6);
    auto sets = partition_sets(p.radii());
    Rng rng(3);
    HopConfig cfg;
    cfg.omit_random_set_swaps = true;
    const auto batch = generate_neighbors(p, sets, lists_with_narrow(), rng, cfg);
    CHECK(batch.patterns.size() == 39);
    CHECK(counts(batch)[MoveKind::RandomSwapInSet] == 0);
}

TEST_CASE("real pattern lists produce a full batch when a narrow space exists") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto p = linear_pattern(12, 30, seed);
        const auto lists = space_lists_for(p);
        auto sets = partition_sets(p.radii());
        Rng rng(seed);
        const auto batch = generate_neighbors(p, sets, lists, rng);
        CHECK(batch.patterns.size() == (narrow_spaces(lists).empty() ? 37u : 43u));
    }
}

TEST_CASE("jammers are the max-pain circles and are tabu for exactly one step") {
    auto p = linear_pattern(12, 25, 7);
    auto sets = partition_sets(p.radii());
    const auto pain = energy(p).pain;
    const auto lists = lists_with_narrow();
    Rng rng(4);

    const auto t0 = generate_neighbors(p, sets, lists, rng);
    REQUIRE(t0.jammers.size() == 4);
    for (std::size_t g = 0; g < 4; ++g) {
        const auto& members = sets.groups[g];
        const std::size_t j = t0.jammers[g];
        for (std::size_t c : members) CHECK(pain[c] <= pain[j]);
        CHECK(sets.is_tabu(j));
    }

    const auto t1 = generate_neighbors(p, sets, lists, rng);
    for (std::size_t j : t1.jammers) {
        CHECK(std::find(t0.jammers.begin(), t0.jammers.end(), j) == t0.jammers.end());
    }
    // The S1 pair of the NSO moves skips tabu circles too.
    for (const auto& nb : t1.patterns) {
        if (nb.kind != MoveKind::NsoS1PairLargest) continue;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!(nb.pattern.center(i) == p.center(i))) {
                CHECK(std::find(t0.jammers.begin(), t0.jammers.end(), i) == t0.jammers.end());
            }
        }
    }

    // Same pattern, same pains: at t+2 the t jammers are selectable again.
    const auto t2 = generate_neighbors(p, sets, lists, rng);
    CHECK(t2.jammers == t0.jammers);
}

TEST_CASE("all of S1 tabu skips the S1 pair moves") {
    auto p = linear_pattern(12, 25, 8);
    auto sets = partition_sets(p.radii());
    for (std::size_t c : sets.groups[0]) sets.tabu[c] = 1;
    Rng rng(5);
    const auto batch = generate_neighbors(p, sets, lists_with_narrow(), rng);
    auto c = counts(batch);
    CHECK(c[MoveKind::NsoS1PairLargest] == 0);
    CHECK(c[MoveKind::NsoS1S2Largest] == 0);
    CHECK(c[MoveKind::RelocateLargestL1] == 3);
    CHECK(batch.patterns.size() == 43 - 6 - 6);
}

TEST_CASE("moves preserve size, radii and container and touch the right number of centres") {
    std::mt19937_64 seeds(9);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(trial % 20);
        auto p = oracle::random_pattern(seeds, n, 8.0 + trial % 6);
        auto sets = partition_sets(p.radii());
        Rng rng(seeds());
        const auto batch = generate_neighbors(p, sets, space_lists_for(p), rng);
        REQUIRE(batch.patterns.size() <= 43);
        for (const auto& nb : batch.patterns) {
            REQUIRE(nb.pattern.size() == p.size());
            REQUIRE(nb.pattern.radii() == p.radii());
            REQUIRE(nb.pattern.side() == p.side());
            const auto changed = changed_centers(p, nb.pattern);
            switch (nb.kind) {
                case MoveKind::RelocateLargestL1:
                case MoveKind::RelocateLargestL2:
                case MoveKind::RelocateBestL1:
                case MoveKind::RelocateBestL2:
                case MoveKind::RelocateRandomL1:
                case MoveKind::RelocateRandomL2: REQUIRE(changed <= 1); break;
                case MoveKind::CrossSetPairSwap: REQUIRE(changed <= 4); break;
                default: REQUIRE(changed <= 2); break;
            }
        }
    }
}

TEST_CASE("neighbor generation is deterministic") {
    auto p = linear_pattern(16, 30, 10);
    auto s1 = partition_sets(p.radii());
    auto s2 = s1;
    Rng r1(99), r2(99);
    const auto lists = space_lists_for(p);
    const auto a = generate_neighbors(p, s1, lists, r1);
    const auto b = generate_neighbors(p, s2, lists, r2);
    REQUIRE(a.patterns.size() == b.patterns.size());
    for (std::size_t k = 0; k < a.patterns.size(); ++k) {
        CHECK(a.patterns[k].kind == b.patterns[k].kind);
        CHECK(a.patterns[k].pattern == b.patterns[k].pattern);
    }
    CHECK(s1.tabu == s2.tabu);
}

TEST_CASE("cross-set swaps pair circles of similar radius") {
    auto p = linear_pattern(12, 25, 11);
    auto sets = partition_sets(p.radii());
    Rng rng(6);
    const auto batch = generate_neighbors(p, sets, square_lists(), rng);
    int seen = 0;
    for (const auto& nb : batch.patterns) {
        if (nb.kind != MoveKind::CrossSetPairSwap) continue;
        ++seen;
        std::vector<std::size_t> moved;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!(nb.pattern.center(i) == p.center(i))) moved.push_back(i);
        }
        REQUIRE(moved.size() == 4);
        // Linear radii 1..12 with groups of three: the first group's pair is
        // adjacent and so is the second's.
        CHECK(moved[1] == moved[0] + 1);
        CHECK(moved[3] == moved[2] + 1);
        CHECK(sets.group_of(moved[0]) != sets.group_of(moved[2]));
    }
    CHECK(seen == 5);
}

TEST_CASE("tiny patterns are rejected") {
    auto p = linear_pattern(3, 10, 1);
    PartitionSets sets;
    Rng rng(1);
    CHECK_THROWS_AS(generate_neighbors(p, sets, {}, rng), std::invalid_argument);
}

TEST_CASE("move kind names") {
    CHECK(to_string(MoveKind::RelocateLargestL1) == "relocate-largest-l1");
    CHECK(to_string(MoveKind::RandomSwapInSet) == "random-swap-in-set");
}
