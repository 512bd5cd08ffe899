#include "lgsim/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "lgsim/errors.h"

namespace lgsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_zeta(double zeta) {
    if (!(zeta >= 0.0 && zeta <= 1.0)) {
        throw DomainError("venality must lie in [0, 1]");
    }
}

// The oscillating part 2 cos t + cos 2t is even and 2 pi periodic, so [0, pi]
// holds every minimum.
double min_over_theta(double zeta) {
    const auto objective = [zeta](double t) { return f_quantum(t, zeta); };
    const auto [t_min, f_min] = boost::math::tools::brent_find_minima(objective, 0.0, std::numbers::pi, 52);
    const double at_edges = std::min(objective(0.0), objective(std::numbers::pi));
    return std::min(f_min, at_edges);
}

}  // namespace

const char *to_string(MacrorealistStance stance) noexcept {
    return stance == MacrorealistStance::moderate ? "moderate" : "adversarial";
}

double f_quantum(double theta, double zeta) {
    require_zeta(zeta);
    return (1.0 - 2.0 * zeta) * (2.0 * std::cos(theta) + std::cos(2.0 * theta)) + 1.0;
}

double f_bound(MacrorealistStance stance, double zeta) {
    require_zeta(zeta);
    return stance == MacrorealistStance::moderate ? zeta : -2.0 * zeta;
}

bool violates(double f, MacrorealistStance stance, double zeta) {
    return f < f_bound(stance, zeta) - kViolationMargin;
}

double critical_venality(MacrorealistStance stance) {
    // min f_quantum = 1 - (3/2)(1 - 2 zeta) = 3 zeta - 1/2.
    //   moderate:    3 zeta - 1/2 < zeta     <=> zeta < 1/4
    //   adversarial: 3 zeta - 1/2 < -2 zeta  <=> zeta < 1/10
    constexpr double g_min_oscillation = -1.5;
    const double slope = -2.0 * g_min_oscillation;  // d(min f)/d zeta
    const double offset = 1.0 + g_min_oscillation;  // min f at zeta = 0
    const double bound_slope = stance == MacrorealistStance::moderate ? 1.0 : -2.0;
    return -offset / (slope - bound_slope);
}

double violation_margin(MacrorealistStance stance, double zeta) {
    return min_over_theta(zeta) - f_bound(stance, zeta);
}

double critical_venality_numeric(MacrorealistStance stance) {
    const auto margin = [stance](double z) { return violation_margin(stance, z); };
    boost::uintmax_t max_iter = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(40);
    // Margin is negative at zeta = 0 (f = -1/2 < 0) and positive at 1/2 (f = 1).
    const auto [lo, hi] = boost::math::tools::toms748_solve(margin, 0.0, 0.5, tol, max_iter);
    return 0.5 * (lo + hi);
}

std::vector<BoundLandscapePoint> landscape_grid(std::size_t theta_steps, std::size_t zeta_steps, unsigned jobs) {
    if (theta_steps < 2 || zeta_steps < 2) {
        throw DomainError("landscape grid needs at least 2 steps along each axis");
    }
    std::vector<BoundLandscapePoint> grid(theta_steps * zeta_steps);
    const auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t i = row_begin; i < row_end; ++i) {
            const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(theta_steps - 1);
            for (std::size_t j = 0; j < zeta_steps; ++j) {
                const double zeta = 0.5 * static_cast<double>(j) / static_cast<double>(zeta_steps - 1);
                grid[i * zeta_steps + j] = {theta, zeta, f_quantum(theta, zeta),
                                            f_bound(MacrorealistStance::moderate, zeta),
                                            f_bound(MacrorealistStance::adversarial, zeta)};
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, theta_steps);
    if (workers == 1) {
        fill_rows(0, theta_steps);
        return grid;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(fill_rows, theta_steps * w / workers, theta_steps * (w + 1) / workers);
    }
    pool.clear();
    return grid;
}

}  // namespace lgsim
