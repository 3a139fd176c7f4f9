#include "circlepack/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace circlepack {

Pattern::Pattern(std::shared_ptr<const Radii> radii, std::vector<double> coords, double side)
    : radii_(std::move(radii)), coords_(std::move(coords)), side_(side) {
    if (!radii_) throw std::invalid_argument("Pattern: null radii");
    if (coords_.size() != 2 * radii_->size()) throw std::invalid_argument("Pattern: need 2n coordinates");
    if (!(side_ > 0.0) || !std::isfinite(side_)) throw std::invalid_argument("Pattern: side must be positive");
}

Pattern::Pattern(std::shared_ptr<const Radii> radii, std::span<const Point> centers, double side)
    : Pattern(std::move(radii), [&] {
          std::vector<double> c;
          c.reserve(2 * centers.size());
          for (auto p : centers) {
              c.push_back(p.x);
              c.push_back(p.y);
          }
          return c;
      }(), side) {}

void Pattern::set_center(std::size_t i, Point p) {
    coords_[2 * i] = p.x;
    coords_[2 * i + 1] = p.y;
}

void Pattern::set_side(double side) {
    if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("Pattern: side must be positive");
    side_ = side;
}

void Pattern::set_coords(std::vector<double> coords) {
    if (coords.size() != coords_.size()) throw std::invalid_argument("Pattern: coordinate count mismatch");
    coords_ = std::move(coords);
}

BorderDepths border_depths(Point center, double radius, double side) {
    const double half = 0.5 * side;
    return {std::max(radius + std::abs(center.x) - half, 0.0), std::max(radius + std::abs(center.y) - half, 0.0)};
}

double pair_depth(Point c1, double r1, Point c2, double r2) {
    return std::max((r1 + r2) - std::hypot(c1.x - c2.x, c1.y - c2.y), 0.0);
}

EnergyReport energy(const Pattern& pattern) {
    const std::size_t n = pattern.size();
    EnergyReport report;
    report.border.resize(n);
    report.pair_depth_sum.assign(n, 0.0);
    report.pain.assign(n, 0.0);

    double pairs = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = pair_depth(pattern.center(i), pattern.radius(i), pattern.center(j), pattern.radius(j));
            if (d > 0.0) {
                const double d2 = d * d;
                pairs += d2;
                report.pair_depth_sum[i] += d2;
                report.pair_depth_sum[j] += d2;
            }
        }
    }
    double borders = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = border_depths(pattern.center(i), pattern.radius(i), pattern.side());
        report.border[i] = b;
        const double own = b.vertical * b.vertical + b.horizontal * b.horizontal;
        borders += own;
        const double r = pattern.radius(i);
        report.pain[i] = (own + report.pair_depth_sum[i]) / (r * r);
    }
    report.total = pairs + borders;
    return report;
}

double energy_value(std::span<const double> radii, std::span<const double> coords, double side) {
    const std::size_t n = radii.size();
    const double half = 0.5 * side;
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = coords[2 * i];
        const double yi = coords[2 * i + 1];
        const double ri = radii[i];
        const double dv = ri + std::abs(xi) - half;
        const double dh = ri + std::abs(yi) - half;
        if (dv > 0.0) u += dv * dv;
        if (dh > 0.0) u += dh * dh;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xi - coords[2 * j];
            const double dy = yi - coords[2 * j + 1];
            const double rr = ri + radii[j];
            const double dist2 = dx * dx + dy * dy;
            if (dist2 >= rr * rr) continue;
            const double d = rr - std::sqrt(dist2);
            u += d * d;
        }
    }
    return u;
}

namespace {

// Fixed separation direction for an overlapping pair sharing a center.
Point substitute_direction(std::size_t i, std::size_t j) {
    constexpr double kGolden = 0.6180339887498949;
    constexpr double kSilver = 0.4142135623730951;
    double t = static_cast<double>(i + 1) * kGolden + static_cast<double>(j + 1) * kSilver;
    t -= std::floor(t);
    const double angle = 2.0 * 3.14159265358979323846 * t;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

double energy_and_gradient(std::span<const double> radii, std::span<const double> coords, double side,
                           std::span<double> grad, bool* coincident) {
    const std::size_t n = radii.size();
    const double half = 0.5 * side;
    std::fill(grad.begin(), grad.end(), 0.0);
    if (coincident != nullptr) *coincident = false;
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = coords[2 * i];
        const double yi = coords[2 * i + 1];
        const double ri = radii[i];
        // d/dx of max(r + |x| - L/2, 0)^2 is 2 D sign(x).
        const double dv = ri + std::abs(xi) - half;
        if (dv > 0.0) {
            u += dv * dv;
            grad[2 * i] += 2.0 * dv * ((xi > 0.0) - (xi < 0.0));
        }
        const double dh = ri + std::abs(yi) - half;
        if (dh > 0.0) {
            u += dh * dh;
            grad[2 * i + 1] += 2.0 * dh * ((yi > 0.0) - (yi < 0.0));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = xi - coords[2 * j];
            double dy = yi - coords[2 * j + 1];
            const double rr = ri + radii[j];
            const double dist2 = dx * dx + dy * dy;
            if (dist2 >= rr * rr) continue;
            const double dist = std::sqrt(dist2);
            const double d = rr - dist;
            u += d * d;
            double ux = 0.0;
            double uy = 0.0;
            if (dist > 0.0) {
                ux = dx / dist;
                uy = dy / dist;
            } else {
                const auto dir = substitute_direction(i, j);
                ux = dir.x;
                uy = dir.y;
                if (coincident != nullptr) *coincident = true;
            }
            // d(D^2)/dx_i = -2 D (x_i - x_j) / dist
            const double gx = -2.0 * d * ux;
            const double gy = -2.0 * d * uy;
            grad[2 * i] += gx;
            grad[2 * i + 1] += gy;
            grad[2 * j] -= gx;
            grad[2 * j + 1] -= gy;
        }
    }
    return u;
}

GradientResult energy_gradient(const Pattern& pattern) {
    GradientResult out;
    out.values.resize(pattern.coords().size());
    energy_and_gradient(pattern.radii(), pattern.coords(), pattern.side(), out.values, &out.coincident_pair);
    return out;
}

double pain_degree(const Pattern& pattern, std::size_t i) {
    if (i >= pattern.size()) throw std::out_of_range("pain_degree: circle index");
    const auto b = border_depths(pattern.center(i), pattern.radius(i), pattern.side());
    double sum = b.vertical * b.vertical + b.horizontal * b.horizontal;
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        if (j == i) continue;
        const double d = pair_depth(pattern.center(i), pattern.radius(i), pattern.center(j), pattern.radius(j));
        sum += d * d;
    }
    const double r = pattern.radius(i);
    return sum / (r * r);
}

bool is_feasible(const Pattern& pattern, double tol) {
    const std::size_t n = pattern.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = border_depths(pattern.center(i), pattern.radius(i), pattern.side());
        if (b.vertical > tol || b.horizontal > tol) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pair_depth(pattern.center(i), pattern.radius(i), pattern.center(j), pattern.radius(j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool PartitionSets::is_tabu(std::size_t circle) const {
    auto it = tabu.find(circle);
    return it != tabu.end() && it->second > 0;
}

int PartitionSets::group_of(std::size_t circle) const {
    for (int g = 0; g < 4; ++g) {
        const auto& members = groups[static_cast<std::size_t>(g)];
        if (std::find(members.begin(), members.end(), circle) != members.end()) return g;
    }
    return -1;
}

void PartitionSets::advance_tabu(std::span<const std::size_t> jammers, int tenure) {
    for (auto it = tabu.begin(); it != tabu.end();) {
        if (--it->second <= 0) {
            it = tabu.erase(it);
        } else {
            ++it;
        }
    }
    if (tenure <= 0) return;
    for (auto c : jammers) tabu[c] = tenure;
}

PartitionSets partition_sets(std::span<const double> radii) {
    const std::size_t n = radii.size();
    if (n < 4) throw std::invalid_argument("partition_sets: need at least 4 circles");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return radii[a] < radii[b]; });
    const std::array<std::size_t, 5> cuts{0, n / 4, n / 2, (3 * n) / 4, n};
    PartitionSets sets;
    for (std::size_t g = 0; g < 4; ++g) {
        sets.groups[g].assign(order.begin() + static_cast<std::ptrdiff_t>(cuts[g]),
                              order.begin() + static_cast<std::ptrdiff_t>(cuts[g + 1]));
    }
    return sets;
}

PartitionSets partition_sets(std::size_t n) {
    std::vector<double> ascending(n);
    std::iota(ascending.begin(), ascending.end(), 1.0);
    return partition_sets(ascending);
}

}  // namespace circlepack
