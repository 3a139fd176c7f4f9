#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace circlepack {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

using Radii = std::vector<double>;

/// Circle centers plus the container side. The container is the square
/// [-L/2, L/2]^2. Coordinates are stored flat as (x_0, y_0, x_1, y_1, ...),
/// the layout the minimizer works on. Circle indices are 0-based here.
class Pattern {
public:
    Pattern(std::shared_ptr<const Radii> radii, std::vector<double> coords, double side);
    Pattern(std::shared_ptr<const Radii> radii, std::span<const Point> centers, double side);

    [[nodiscard]] std::size_t size() const { return radii_->size(); }
    [[nodiscard]] double side() const { return side_; }
    [[nodiscard]] double radius(std::size_t i) const { return (*radii_)[i]; }
    [[nodiscard]] const Radii& radii() const { return *radii_; }
    [[nodiscard]] const std::shared_ptr<const Radii>& radii_ptr() const { return radii_; }
    [[nodiscard]] Point center(std::size_t i) const { return {coords_[2 * i], coords_[2 * i + 1]}; }
    [[nodiscard]] std::span<const double> coords() const { return coords_; }

    void set_center(std::size_t i, Point p);
    void set_side(double side);
    void set_coords(std::vector<double> coords);

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.side_ == b.side_ && a.coords_ == b.coords_ && *a.radii_ == *b.radii_;
    }

private:
    std::shared_ptr<const Radii> radii_;
    std::vector<double> coords_;
    double side_;
};

struct BorderDepths {
    double vertical = 0.0;    // D_iv, penetration through x = +-L/2
    double horizontal = 0.0;  // D_ih, penetration through y = +-L/2
};

BorderDepths border_depths(Point center, double radius, double side);
double pair_depth(Point c1, double r1, Point c2, double r2);

struct EnergyReport {
    double total = 0.0;
    std::vector<BorderDepths> border;
    std::vector<double> pair_depth_sum;  // per circle: sum_j D_ij^2
    std::vector<double> pain;
};

EnergyReport energy(const Pattern& pattern);

/// Energy only; the hot path for the minimizer when no gradient is needed.
double energy_value(std::span<const double> radii, std::span<const double> coords, double side);

/// Energy and its gradient written into `grad` (size 2n). Returns the energy.
/// `coincident` is set when an overlapping pair shares a center and a
/// substitute separation direction had to be used.
double energy_and_gradient(std::span<const double> radii, std::span<const double> coords, double side,
                           std::span<double> grad, bool* coincident = nullptr);

struct GradientResult {
    std::vector<double> values;
    bool coincident_pair = false;
};

GradientResult energy_gradient(const Pattern& pattern);

double pain_degree(const Pattern& pattern, std::size_t i);

/// Every border and pair depth <= tol.
bool is_feasible(const Pattern& pattern, double tol = 1e-9);

/// Circles grouped by radius into quarters S1..S4 plus the jammer tabu list.
struct PartitionSets {
    std::array<std::vector<std::size_t>, 4> groups;
    std::map<std::size_t, int> tabu;  // circle -> remaining tabu steps

    [[nodiscard]] bool is_tabu(std::size_t circle) const;
    [[nodiscard]] int group_of(std::size_t circle) const;

    /// One step passes: every tenure decrements, then `jammers` get `tenure`.
    void advance_tabu(std::span<const std::size_t> jammers, int tenure);
};

/// Quarters by ascending radius: [0, n/4), [n/4, n/2), [n/2, 3n/4), [3n/4, n)
/// with integer division. Throws std::invalid_argument when n < 4.
PartitionSets partition_sets(std::span<const double> radii);
PartitionSets partition_sets(std::size_t n);

}  // namespace circlepack
