#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace circlepack {

/// Writes the gradient into the second argument and returns the value.
using Objective = std::function<double(std::span<const double>, std::span<double>)>;

struct MinimizeConfig {
    int memory = 7;
    int max_iters = 5000;
    /// Stop when max_k |g_k| falls below this.
    double grad_tol = 1e-10;
    /// Stop when the objective falls strictly below this.
    double energy_tol = 1e-20;
    double sufficient_decrease = 1e-4;
    double curvature = 0.9;
    int max_line_search_evals = 30;
    /// After a strong-Wolfe step, try the step where the secant model of the
    /// directional derivative vanishes. Exact on quadratic pieces.
    bool secant_refinement = true;
    /// Observer for each accepted objective value, starting with f(x0).
    std::function<void(double)> on_accept;
};

enum class Termination { ObjectiveBelowTol, GradBelowTol, MaxIters, LineSearchFailure };

std::string_view to_string(Termination reason);

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    Termination reason = Termination::MaxIters;
};

/// Limited-memory BFGS (two-loop recursion) with a strong-Wolfe line search.
/// Throws std::invalid_argument on a malformed config or a non-finite start.
MinimizeResult minimize(const Objective& objective, std::vector<double> x0, const MinimizeConfig& cfg = {});

void validate(const MinimizeConfig& cfg);

}  // namespace circlepack
