#pragma once

#include <cstddef>
#include <vector>

namespace lgsim {

enum class MacrorealistStance { moderate, adversarial };

const char *to_string(MacrorealistStance stance) noexcept;

/// Comparisons against a bound count as violations only below this margin,
/// so grid points that sit exactly on a threshold are not misclassified.
inline constexpr double kViolationMargin = 1e-12;

/// (1 - 2 zeta)(2 cos theta + cos 2 theta) + 1. Throws DomainError unless
/// zeta is in [0, 1].
double f_quantum(double theta, double zeta);

/// moderate: zeta. adversarial: -2 zeta.
double f_bound(MacrorealistStance stance, double zeta);

bool violates(double f, MacrorealistStance stance, double zeta);

/// Supremum of the venalities at which some theta makes the quantum
/// prediction dip below the stance's bound. Exact: with min over theta of
/// (2 cos theta + cos 2 theta) = -3/2 the condition is linear in zeta.
double critical_venality(MacrorealistStance stance);

/// Independent numeric route: Brent minimization over theta nested inside a
/// bracketing root solve in zeta.
double critical_venality_numeric(MacrorealistStance stance);

/// min over theta of f_quantum(theta, zeta) minus the bound, numerically.
double violation_margin(MacrorealistStance stance, double zeta);

struct BoundLandscapePoint {
    double theta;
    double zeta;
    double f_quantum;
    double f_bound_moderate;
    double f_bound_adversarial;
};

/// Uniform grid over theta in [0, 2 pi] (rows) x zeta in [0, 0.5] (columns),
/// both endpoints included. Index = i_theta * zeta_steps + i_zeta.
/// Throws DomainError if either step count is below 2.
std::vector<BoundLandscapePoint> landscape_grid(std::size_t theta_steps, std::size_t zeta_steps,
                                                unsigned jobs = 1);

}  // namespace lgsim
