#include "circlepack/hop.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace circlepack {

std::string_view to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::RelocateLargestL1: return "relocate-largest-l1";
        case MoveKind::RelocateLargestL2: return "relocate-largest-l2";
        case MoveKind::RelocateBestL1: return "relocate-best-l1";
        case MoveKind::RelocateBestL2: return "relocate-best-l2";
        case MoveKind::RelocateRandomL1: return "relocate-random-l1";
        case MoveKind::RelocateRandomL2: return "relocate-random-l2";
        case MoveKind::NsoS1PairLargest: return "nso-s1-pair-largest";
        case MoveKind::NsoS1PairBestMatch: return "nso-s1-pair-best";
        case MoveKind::NsoS1PairRandom: return "nso-s1-pair-random";
        case MoveKind::NsoS1S2Largest: return "nso-s1-s2-largest";
        case MoveKind::NsoS1S2BestForS1: return "nso-s1-s2-best-s1";
        case MoveKind::NsoS1S2BestForS2: return "nso-s1-s2-best-s2";
        case MoveKind::CrossSetPairSwap: return "cross-set-pair-swap";
        case MoveKind::AdjacentSwap: return "adjacent-swap";
        case MoveKind::RandomSwapInSet: return "random-swap-in-set";
    }
    return "unknown";
}

Pattern place_item_in_space(const Pattern& pattern, std::size_t i, const ActionSpace& space) {
    Pattern out = pattern;
    out.set_center(i, space.center());
    return out;
}

Pattern neighbour_space_occupy(const Pattern& pattern, std::size_t i, std::size_t j, const ActionSpace& narrow) {
    if (i == j) throw std::invalid_argument("neighbour_space_occupy: need two distinct circles");
    const auto [first, second] = split_narrow(narrow);
    Pattern out = pattern;
    out.set_center(i, first.center());
    out.set_center(j, second.center());
    return out;
}

Pattern swap_circles(const Pattern& pattern, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("swap_circles: need two distinct circles");
    Pattern out = pattern;
    out.set_center(i, pattern.center(j));
    out.set_center(j, pattern.center(i));
    return out;
}

std::vector<ActionSpace> narrow_spaces(const SpaceLists& lists) {
    std::vector<ActionSpace> out;
    auto add = [&](const ActionSpace& s) {
        if (is_narrow(s) && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    for (const auto& s : lists.by_min_side) add(s);
    for (const auto& s : lists.by_semi_perimeter) add(s);
    return out;
}

namespace {

std::size_t uniform_index(Rng& rng, std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

// Members ordered by pain, non-ascending; ties by ascending index.
std::vector<std::size_t> by_pain(std::span<const std::size_t> members, const std::vector<double>& pain) {
    std::vector<std::size_t> out(members.begin(), members.end());
    std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        if (pain[a] != pain[b]) return pain[a] > pain[b];
        return a < b;
    });
    return out;
}

std::vector<std::size_t> without_tabu(std::vector<std::size_t> ranked, const PartitionSets& sets) {
    std::erase_if(ranked, [&](std::size_t c) { return sets.is_tabu(c); });
    return ranked;
}

const ActionSpace& largest_by_area(std::span<const ActionSpace> spaces) {
    const ActionSpace* best = &spaces.front();
    for (const auto& s : spaces.subspan(1)) {
        if (s.area() > best->area() || (s.area() == best->area() && position_less(s, *best))) best = &s;
    }
    return *best;
}

}  // namespace

HopBatch generate_neighbors(const Pattern& pattern, PartitionSets& sets, const SpaceLists& lists, Rng& rng,
                            const HopConfig& cfg) {
    if (pattern.size() < 4) throw std::invalid_argument("generate_neighbors: need at least 4 circles");
    const auto report = energy(pattern);
    const auto& pain = report.pain;
    HopBatch batch;
    auto emit = [&](Pattern p, MoveKind kind) { batch.patterns.push_back({std::move(p), kind}); };

    std::array<std::vector<std::size_t>, 4> ranked;
    std::array<std::vector<std::size_t>, 4> selectable;
    for (std::size_t g = 0; g < 4; ++g) {
        ranked[g] = by_pain(sets.groups[g], pain);
        selectable[g] = without_tabu(ranked[g], sets);
    }

    // Relocate each group's most pained selectable circle.
    const auto& l1 = lists.by_min_side;
    const auto& l2 = lists.by_semi_perimeter;
    for (std::size_t g = 0; g < 4; ++g) {
        if (selectable[g].empty()) continue;
        const std::size_t c = selectable[g].front();
        batch.jammers.push_back(c);
        const double r = pattern.radius(c);
        if (!l1.empty()) {
            emit(place_item_in_space(pattern, c, l1.front()), MoveKind::RelocateLargestL1);
        }
        if (!l2.empty()) {
            emit(place_item_in_space(pattern, c, l2.front()), MoveKind::RelocateLargestL2);
        }
        if (auto s = best_matching(l1, r)) emit(place_item_in_space(pattern, c, *s), MoveKind::RelocateBestL1);
        if (auto s = best_matching(l2, r)) emit(place_item_in_space(pattern, c, *s), MoveKind::RelocateBestL2);
        if (!l1.empty()) {
            emit(place_item_in_space(pattern, c, l1[uniform_index(rng, l1.size())]), MoveKind::RelocateRandomL1);
        }
        if (!l2.empty()) {
            emit(place_item_in_space(pattern, c, l2[uniform_index(rng, l2.size())]), MoveKind::RelocateRandomL2);
        }
    }

    // Neighbour space occupying on narrow spaces.
    const auto narrow = narrow_spaces(lists);
    if (!narrow.empty()) {
        const auto& s1 = selectable[0];
        const auto& s2 = selectable[1];
        if (s1.size() >= 2) {
            const std::size_t a = s1[0];
            const std::size_t b = s1[1];
            emit(neighbour_space_occupy(pattern, a, b, largest_by_area(narrow)), MoveKind::NsoS1PairLargest);
            emit(neighbour_space_occupy(pattern, a, b, *best_matching(narrow, pattern.radius(a))),
                 MoveKind::NsoS1PairBestMatch);
            emit(neighbour_space_occupy(pattern, a, b, narrow[uniform_index(rng, narrow.size())]),
                 MoveKind::NsoS1PairRandom);
        }
        if (!s1.empty() && !s2.empty()) {
            const std::size_t a = s1[0];
            const std::size_t b = s2[0];
            emit(neighbour_space_occupy(pattern, a, b, largest_by_area(narrow)), MoveKind::NsoS1S2Largest);
            emit(neighbour_space_occupy(pattern, a, b, *best_matching(narrow, pattern.radius(a))),
                 MoveKind::NsoS1S2BestForS1);
            emit(neighbour_space_occupy(pattern, a, b, *best_matching(narrow, pattern.radius(b))),
                 MoveKind::NsoS1S2BestForS2);
        }
    }

    // Swap a random adjacent pair of one group with the most similar
    // adjacent pair of another.
    constexpr std::array<std::pair<std::size_t, std::size_t>, 5> kCrossPairs{{{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}}};
    for (auto [ga, gb] : kCrossPairs) {
        const auto& a = sets.groups[ga];
        const auto& b = sets.groups[gb];
        if (a.size() < 2 || b.size() < 2) continue;
        const std::size_t k = uniform_index(rng, a.size() - 1);
        std::size_t best = 0;
        double best_diff = 0.0;
        for (std::size_t l = 0; l + 1 < b.size(); ++l) {
            const double diff = std::abs(pattern.radius(a[k]) - pattern.radius(b[l])) +
                                std::abs(pattern.radius(a[k + 1]) - pattern.radius(b[l + 1]));
            if (l == 0 || diff < best_diff) {
                best = l;
                best_diff = diff;
            }
        }
        Pattern p = swap_circles(pattern, a[k], b[best]);
        p = swap_circles(p, a[k + 1], b[best + 1]);
        emit(std::move(p), MoveKind::CrossSetPairSwap);
    }

    // Swap each group's most pained circle with its successor by radius
    // (predecessor for the largest circle).
    std::vector<std::size_t> order;
    for (const auto& g : sets.groups) order.insert(order.end(), g.begin(), g.end());
    for (std::size_t g = 0; g < 4; ++g) {
        if (ranked[g].empty()) continue;
        const std::size_t c = ranked[g].front();
        const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), c) - order.begin());
        const std::size_t partner = pos + 1 < order.size() ? order[pos + 1] : order[pos - 1];
        emit(swap_circles(pattern, c, partner), MoveKind::AdjacentSwap);
    }

    if (!cfg.omit_random_set_swaps) {
        for (std::size_t g = 0; g < 4; ++g) {
            const auto& members = sets.groups[g];
            if (members.size() < 2) continue;
            const std::size_t i = uniform_index(rng, members.size());
            std::size_t j = uniform_index(rng, members.size() - 1);
            if (j >= i) ++j;
            emit(swap_circles(pattern, members[i], members[j]), MoveKind::RandomSwapInSet);
        }
    }

    sets.advance_tabu(batch.jammers, cfg.tabu_tenure);
    return batch;
}

}  // namespace circlepack
