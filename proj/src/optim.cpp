#include "circlepack/optim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace circlepack {

std::string_view to_string(Termination reason) {
    switch (reason) {
        case Termination::ObjectiveBelowTol: return "objective-below-tol";
        case Termination::GradBelowTol: return "grad-below-tol";
        case Termination::MaxIters: return "max-iters";
        case Termination::LineSearchFailure: return "line-search-failure";
    }
    return "unknown";
}

void validate(const MinimizeConfig& cfg) {
    if (cfg.memory < 1) throw std::invalid_argument("MinimizeConfig: memory must be >= 1");
    if (!(0.0 < cfg.sufficient_decrease && cfg.sufficient_decrease < cfg.curvature && cfg.curvature < 1.0)) {
        throw std::invalid_argument("MinimizeConfig: need 0 < sufficient_decrease < curvature < 1");
    }
    if (cfg.max_iters < 0 || cfg.max_line_search_evals < 1) {
        throw std::invalid_argument("MinimizeConfig: iteration limits");
    }
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

struct Point {
    double step = 0.0;
    double value = 0.0;
    double slope = 0.0;  // directional derivative at step
};

struct Trial : Point {
    std::vector<double> x;
    std::vector<double> g;
};

// Evaluates phi(step) = f(x + step d) along a fixed direction into a reused buffer.
class LineFunction {
public:
    LineFunction(const Objective& f, std::span<const double> x, std::span<const double> d, int& evals)
        : f_(f), x_(x), d_(d), evals_(evals) {}

    void operator()(double step, Trial& t) const {
        t.step = step;
        t.x.resize(x_.size());
        t.g.resize(x_.size());
        for (std::size_t k = 0; k < x_.size(); ++k) t.x[k] = x_[k] + step * d_[k];
        t.value = f_(t.x, t.g);
        ++evals_;
        t.slope = dot(t.g, d_);
        if (!std::isfinite(t.value) || !all_finite(t.g)) {
            t.value = std::numeric_limits<double>::infinity();
            t.slope = std::numeric_limits<double>::quiet_NaN();
        }
    }

private:
    const Objective& f_;
    std::span<const double> x_;
    std::span<const double> d_;
    int& evals_;
};

// Minimizer of the cubic through (a, fa, da) and (b, fb, db), safeguarded
// to the inner 80% of the bracket.
double interpolate(const Point& a, const Point& b) {
    const double lo = std::min(a.step, b.step);
    const double hi = std::max(a.step, b.step);
    const double margin = 0.1 * (hi - lo);
    double step = 0.5 * (lo + hi);
    if (std::isfinite(b.value) && std::isfinite(b.slope)) {
        const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.step - b.step);
        const double disc = d1 * d1 - a.slope * b.slope;
        if (disc >= 0.0) {
            const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
            const double denom = b.slope - a.slope + 2.0 * d2;
            if (denom != 0.0) {
                const double cand = b.step - (b.step - a.step) * (b.slope + d2 - d1) / denom;
                if (std::isfinite(cand)) step = cand;
            }
        }
    }
    return std::clamp(step, lo + margin, hi - margin);
}

// Returns the accepted trial (t or fallback), or nullptr when no decrease was found.
Trial* strong_wolfe(const LineFunction& phi, const Point& origin, double initial_step, const MinimizeConfig& cfg,
                    int& budget, Trial& t, Trial& fallback) {
    const double c1 = cfg.sufficient_decrease;
    const double c2 = cfg.curvature;
    const double f0 = origin.value;
    const double g0 = origin.slope;
    auto armijo = [&](const Point& p) { return p.value <= f0 + c1 * p.step * g0; };
    auto curvature_ok = [&](const Point& p) { return std::abs(p.slope) <= -c2 * g0; };

    // Best point with sufficient decrease seen so far, used if the budget runs out.
    bool have_fallback = false;
    auto note = [&] {
        if (t.step > 0.0 && std::isfinite(t.value) && armijo(t) && t.value < f0 &&
            (!have_fallback || t.value < fallback.value)) {
            have_fallback = true;
            fallback = t;
        }
    };
    auto give_up = [&]() -> Trial* { return have_fallback ? &fallback : nullptr; };

    auto zoom = [&](Point lo, Point hi) -> Trial* {
        while (budget > 0) {
            --budget;
            phi(interpolate(lo, hi), t);
            note();
            if (!armijo(t) || t.value >= lo.value) {
                hi = t;
            } else {
                if (curvature_ok(t)) return &t;
                if (t.slope * (hi.step - lo.step) >= 0.0) hi = lo;
                lo = t;
            }
            if (std::abs(hi.step - lo.step) <= std::numeric_limits<double>::epsilon() * std::max(1.0, lo.step)) break;
        }
        return give_up();
    };

    Point prev = origin;
    double step = initial_step;
    for (int i = 0; budget > 0; ++i) {
        --budget;
        phi(step, t);
        note();
        if (!armijo(t) || (i > 0 && t.value >= prev.value)) return zoom(prev, t);
        if (curvature_ok(t)) return &t;
        if (t.slope >= 0.0) return zoom(t, prev);
        prev = t;
        step *= 2.0;
    }
    return give_up();
}

}  // namespace

MinimizeResult minimize(const Objective& objective, std::vector<double> x0, const MinimizeConfig& cfg) {
    validate(cfg);
    const std::size_t dim = x0.size();
    MinimizeResult result;
    std::vector<double> g(dim);
    double f = objective(x0, g);
    result.evaluations = 1;
    if (!std::isfinite(f) || !all_finite(g)) throw std::invalid_argument("minimize: non-finite objective at x0");
    std::vector<double> x = std::move(x0);
    if (cfg.on_accept) cfg.on_accept(f);

    auto finish = [&](Termination reason) {
        result.x = std::move(x);
        result.value = f;
        result.reason = reason;
        return result;
    };

    std::deque<std::vector<double>> s_hist;
    std::deque<std::vector<double>> y_hist;
    std::deque<double> rho_hist;
    std::vector<double> d(dim);
    std::vector<double> alpha(static_cast<std::size_t>(cfg.memory));
    // Buffers reused across iterations.
    Trial trial;
    Trial fallback;
    Trial refined;
    std::vector<double> s;
    std::vector<double> y;

    for (int iter = 0;; ++iter) {
        if (f < cfg.energy_tol) return finish(Termination::ObjectiveBelowTol);
        if (max_abs(g) < cfg.grad_tol) return finish(Termination::GradBelowTol);
        if (iter >= cfg.max_iters) return finish(Termination::MaxIters);
        result.iterations = iter + 1;

        // Two-loop recursion: d = -H g.
        for (std::size_t k = 0; k < dim; ++k) d[k] = -g[k];
        const std::size_t m = s_hist.size();
        for (std::size_t k = m; k-- > 0;) {
            alpha[k] = rho_hist[k] * dot(s_hist[k], d);
            for (std::size_t e = 0; e < dim; ++e) d[e] -= alpha[k] * y_hist[k][e];
        }
        if (m > 0) {
            const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (auto& e : d) e *= gamma;
        }
        for (std::size_t k = 0; k < m; ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], d);
            for (std::size_t e = 0; e < dim; ++e) d[e] += (alpha[k] - beta) * s_hist[k][e];
        }

        double slope = dot(g, d);
        if (!(slope < 0.0)) {
            // Lost descent; restart from steepest descent.
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t k = 0; k < dim; ++k) d[k] = -g[k];
            slope = dot(g, d);
        }
        const double initial_step = s_hist.empty() ? std::min(1.0, 1.0 / std::sqrt(-slope)) : 1.0;

        int evals = 0;
        LineFunction phi(objective, x, d, evals);
        const Point origin{0.0, f, slope};
        int budget = cfg.max_line_search_evals;
        Trial* next = strong_wolfe(phi, origin, initial_step, cfg, budget, trial, fallback);
        if (next != nullptr && cfg.secant_refinement && budget > 0) {
            const double denom = next->slope - slope;
            if (denom > 0.0) {
                const double target = -slope * next->step / denom;
                if (std::isfinite(target) && target > 0.0 && std::abs(target - next->step) > 1e-3 * next->step) {
                    phi(target, refined);
                    if (refined.value < next->value && refined.value <= f + cfg.sufficient_decrease * refined.step * slope &&
                        std::abs(refined.slope) <= -cfg.curvature * slope) {
                        next = &refined;
                    }
                }
            }
        }
        result.evaluations += evals;
        if (next == nullptr) return finish(Termination::LineSearchFailure);

        assert(next->value <= f);
        s.resize(dim);
        y.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            s[k] = next->x[k] - x[k];
            y[k] = next->g[k] - g[k];
        }
        const double sy = dot(s, y);
        std::swap(x, next->x);
        std::swap(g, next->g);
        f = next->value;
        if (cfg.on_accept) cfg.on_accept(f);
        if (sy > std::numeric_limits<double>::epsilon() * dot(y, y)) {
            std::vector<double> spare_s;
            std::vector<double> spare_y;
            if (s_hist.size() == static_cast<std::size_t>(cfg.memory)) {
                spare_s = std::move(s_hist.front());
                spare_y = std::move(y_hist.front());
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            s = std::move(spare_s);
            y = std::move(spare_y);
        }
    }
}

}  // namespace circlepack
