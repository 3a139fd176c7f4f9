#include "circlepack/actionspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace circlepack {

double Rect::min_side() const { return std::min(width(), height()); }

bool Rect::contains(const Rect& o) const {
    return lo.x <= o.lo.x && lo.y <= o.lo.y && hi.x >= o.hi.x && hi.y >= o.hi.y;
}

bool Rect::overlaps_interior(const Rect& o) const {
    return lo.x < o.hi.x && o.lo.x < hi.x && lo.y < o.hi.y && o.lo.y < hi.y;
}

Rect Square::bounds() const {
    const double h = 0.5 * side;
    return {{center.x - h, center.y - h}, {center.x + h, center.y + h}};
}

Square circle_to_square(double radius, Point center) {
    return {center, (1.0 + 1.0 / std::sqrt(2.0)) * radius};
}

std::vector<Square> squares_of(const Pattern& pattern) {
    std::vector<Square> out;
    out.reserve(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) out.push_back(circle_to_square(pattern.radius(i), pattern.center(i)));
    return out;
}

bool position_less(const Rect& a, const Rect& b) {
    return std::tie(a.lo.x, a.lo.y, a.hi.x, a.hi.y) < std::tie(b.lo.x, b.lo.y, b.hi.x, b.hi.y);
}

namespace {

// Drops rectangles contained in another one (keeping the first of duplicates).
void prune_contained(std::vector<Rect>& rects) {
    std::vector<bool> dead(rects.size(), false);
    for (std::size_t a = 0; a < rects.size(); ++a) {
        if (dead[a]) continue;
        for (std::size_t b = 0; b < rects.size(); ++b) {
            if (a == b || dead[b]) continue;
            if (rects[b].contains(rects[a]) && (rects[b] != rects[a] || b < a)) {
                dead[a] = true;
                break;
            }
        }
    }
    std::size_t keep = 0;
    for (std::size_t k = 0; k < rects.size(); ++k) {
        if (!dead[k]) rects[keep++] = rects[k];
    }
    rects.resize(keep);
}

}  // namespace

std::vector<ActionSpace> compute_action_spaces(std::span<const Square> squares, double container_side) {
    if (!(container_side > 0.0)) throw std::invalid_argument("compute_action_spaces: container side must be positive");
    const double half = 0.5 * container_side;
    const Rect container{{-half, -half}, {half, half}};
    std::vector<Rect> free{container};
    std::vector<Rect> next;
    for (const auto& sq : squares) {
        Rect b = sq.bounds();
        b.lo.x = std::max(b.lo.x, -half);
        b.lo.y = std::max(b.lo.y, -half);
        b.hi.x = std::min(b.hi.x, half);
        b.hi.y = std::min(b.hi.y, half);
        if (!(b.lo.x < b.hi.x && b.lo.y < b.hi.y)) continue;

        next.clear();
        bool split_any = false;
        for (const auto& f : free) {
            if (!f.overlaps_interior(b)) {
                next.push_back(f);
                continue;
            }
            split_any = true;
            if (b.lo.x > f.lo.x) next.push_back({f.lo, {b.lo.x, f.hi.y}});
            if (b.hi.x < f.hi.x) next.push_back({{b.hi.x, f.lo.y}, f.hi});
            if (b.lo.y > f.lo.y) next.push_back({f.lo, {f.hi.x, b.lo.y}});
            if (b.hi.y < f.hi.y) next.push_back({{f.lo.x, b.hi.y}, f.hi});
        }
        if (split_any) {
            prune_contained(next);
            free.swap(next);
        }
    }
    std::sort(free.begin(), free.end(), position_less);
    return free;
}

SpaceLists rank_spaces(std::span<const ActionSpace> spaces) {
    SpaceLists lists;
    lists.by_min_side.assign(spaces.begin(), spaces.end());
    lists.by_semi_perimeter.assign(spaces.begin(), spaces.end());
    std::stable_sort(lists.by_min_side.begin(), lists.by_min_side.end(), [](const Rect& a, const Rect& b) {
        if (a.min_side() != b.min_side()) return a.min_side() > b.min_side();
        if (a.semi_perimeter() != b.semi_perimeter()) return a.semi_perimeter() > b.semi_perimeter();
        return position_less(a, b);
    });
    std::stable_sort(lists.by_semi_perimeter.begin(), lists.by_semi_perimeter.end(), [](const Rect& a, const Rect& b) {
        if (a.semi_perimeter() != b.semi_perimeter()) return a.semi_perimeter() > b.semi_perimeter();
        return position_less(a, b);
    });
    if (lists.by_min_side.size() > SpaceLists::kCapacity) lists.by_min_side.resize(SpaceLists::kCapacity);
    if (lists.by_semi_perimeter.size() > SpaceLists::kCapacity) lists.by_semi_perimeter.resize(SpaceLists::kCapacity);
    return lists;
}

SpaceLists space_lists_for(const Pattern& pattern) {
    const auto squares = squares_of(pattern);
    const auto spaces = compute_action_spaces(squares, pattern.side());
    return rank_spaces(spaces);
}

bool is_narrow(const ActionSpace& space) {
    const double w = space.width();
    const double h = space.height();
    return h <= 0.5 * w || w <= 0.5 * h;
}

std::pair<ActionSpace, ActionSpace> split_narrow(const ActionSpace& space) {
    if (!is_narrow(space)) throw std::invalid_argument("split_narrow: action space is not narrow");
    if (space.width() >= space.height()) {
        const double mid = 0.5 * (space.lo.x + space.hi.x);
        return {{space.lo, {mid, space.hi.y}}, {{mid, space.lo.y}, space.hi}};
    }
    const double mid = 0.5 * (space.lo.y + space.hi.y);
    return {{space.lo, {space.hi.x, mid}}, {{space.lo.x, mid}, space.hi}};
}

std::optional<ActionSpace> best_matching(std::span<const ActionSpace> spaces, double radius) {
    if (spaces.empty()) return std::nullopt;
    const double diameter = 2.0 * radius;
    const double tie_eps = 1e-9 * std::max(diameter, 1.0);
    const ActionSpace* best = &spaces.front();
    double best_gap = std::abs(best->min_side() - diameter);
    for (const auto& s : spaces.subspan(1)) {
        const double gap = std::abs(s.min_side() - diameter);
        if (gap < best_gap - tie_eps) {
            best = &s;
            best_gap = gap;
        } else if (gap <= best_gap + tie_eps) {
            if (s.area() > best->area() || (s.area() == best->area() && position_less(s, *best))) {
                best = &s;
                best_gap = std::min(best_gap, gap);
            }
        }
    }
    return *best;
}

}  // namespace circlepack
