#include "circlepack/relax.hpp"

namespace circlepack {

Relaxed relax(const Pattern& pattern, const MinimizeConfig& cfg) {
    const auto& radii = pattern.radii();
    const double side = pattern.side();
    Objective f = [&radii, side](std::span<const double> x, std::span<double> g) {
        return energy_and_gradient(radii, x, side, g);
    };
    auto res = minimize(f, {pattern.coords().begin(), pattern.coords().end()}, cfg);
    Pattern out = pattern;
    out.set_coords(std::move(res.x));
    return {std::move(out), res.value, res.reason, res.iterations};
}

}  // namespace circlepack
