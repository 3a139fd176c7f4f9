#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circlepack/model.hpp"

namespace circlepack {

/// Axis-aligned rectangle given by its lower-left and upper-right corners.
struct Rect {
    Point lo;
    Point hi;

    [[nodiscard]] double width() const { return hi.x - lo.x; }
    [[nodiscard]] double height() const { return hi.y - lo.y; }
    [[nodiscard]] double min_side() const;
    [[nodiscard]] double semi_perimeter() const { return width() + height(); }
    [[nodiscard]] double area() const { return width() * height(); }
    [[nodiscard]] Point center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }
    [[nodiscard]] bool contains(const Rect& other) const;
    [[nodiscard]] bool overlaps_interior(const Rect& other) const;

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// A maximal unoccupied rectangle with respect to the placed squares.
using ActionSpace = Rect;

struct Square {
    Point center;
    double side = 0.0;

    [[nodiscard]] Rect bounds() const;
};

/// Square of side (1 + 1/sqrt(2)) r centred on the circle.
Square circle_to_square(double radius, Point center);

std::vector<Square> squares_of(const Pattern& pattern);

/// All maximal empty rectangles inside the container [-L/2, L/2]^2. Squares
/// are clipped to the container first; zero-area remainders are dropped.
std::vector<ActionSpace> compute_action_spaces(std::span<const Square> squares, double container_side);

struct SpaceLists {
    static constexpr std::size_t kCapacity = 10;
    std::vector<ActionSpace> by_min_side;        // l1
    std::vector<ActionSpace> by_semi_perimeter;  // l2
};

/// Top-10 rankings: l1 by min(w, h), l2 by w + h, both non-ascending.
/// Ties: larger w + h, then ascending (lo.x, lo.y, hi.x, hi.y).
SpaceLists rank_spaces(std::span<const ActionSpace> spaces);

/// Ranked spaces of the pattern's square approximation.
SpaceLists space_lists_for(const Pattern& pattern);

/// h <= w/2 or w <= h/2.
bool is_narrow(const ActionSpace& space);

/// Halves at the midpoint of the long side, lower/left half first. Throws
/// std::invalid_argument for a space that is not narrow.
std::pair<ActionSpace, ActionSpace> split_narrow(const ActionSpace& space);

/// The space whose short side is closest to 2r. Near-equal gaps (within
/// 1e-9 of the diameter) are ties, resolved by larger area then position.
std::optional<ActionSpace> best_matching(std::span<const ActionSpace> spaces, double radius);

/// Deterministic total order on rectangles by (lo.x, lo.y, hi.x, hi.y).
bool position_less(const Rect& a, const Rect& b);

}  // namespace circlepack
