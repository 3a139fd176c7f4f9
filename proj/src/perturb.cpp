#include "circlepack/perturb.hpp"

#include <algorithm>
#include <stdexcept>

#include "circlepack/actionspace.hpp"

namespace circlepack {

std::vector<std::size_t> pain_list(const EnergyReport& report, const PartitionSets& sets) {
    std::vector<std::size_t> b(sets.groups[2].begin(), sets.groups[2].end());
    b.insert(b.end(), sets.groups[3].begin(), sets.groups[3].end());
    std::stable_sort(b.begin(), b.end(), [&](std::size_t x, std::size_t y) {
        if (report.pain[x] != report.pain[y]) return report.pain[x] > report.pain[y];
        return x < y;
    });
    return b;
}

PerturbResult perturb_layout(const Pattern& pattern, const PartitionSets& sets) {
    if (pattern.size() < 4) throw std::invalid_argument("perturb: need at least 4 circles");
    const auto report = energy(pattern);

    Pattern out = pattern;
    const auto b = pain_list(report, sets);
    for (std::size_t k = 0; k + 1 < b.size(); k += 2) {
        out.set_center(b[k], pattern.center(b[k + 1]));
        out.set_center(b[k + 1], pattern.center(b[k]));
    }

    // Small circles come back one at a time, most pained (in the old pattern) first.
    std::vector<std::size_t> small(sets.groups[0].begin(), sets.groups[0].end());
    small.insert(small.end(), sets.groups[1].begin(), sets.groups[1].end());
    std::stable_sort(small.begin(), small.end(), [&](std::size_t x, std::size_t y) {
        if (report.pain[x] != report.pain[y]) return report.pain[x] > report.pain[y];
        return x < y;
    });

    std::vector<Square> placed;
    placed.reserve(pattern.size());
    for (auto c : b) placed.push_back(circle_to_square(out.radius(c), out.center(c)));

    bool fallback = false;
    for (auto c : small) {
        const auto spaces = compute_action_spaces(placed, out.side());
        Point where{0.0, 0.0};
        if (auto s = best_matching(spaces, out.radius(c))) {
            where = s->center();
        } else {
            fallback = true;
        }
        out.set_center(c, where);
        placed.push_back(circle_to_square(out.radius(c), where));
    }
    const double u = energy_value(out.radii(), out.coords(), out.side());
    return {std::move(out), u, fallback};
}

PerturbResult perturb(const Pattern& pattern, const PartitionSets& sets, const MinimizeConfig& cfg) {
    auto layout = perturb_layout(pattern, sets);
    auto relaxed = relax(layout.pattern, cfg);
    return {std::move(relaxed.pattern), relaxed.energy, layout.fallback_placement};
}

}  // namespace circlepack
