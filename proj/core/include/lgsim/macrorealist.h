#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <string>

#include "lgsim/bounds.h"
#include "lgsim/circuit.h"
#include "lgsim/state.h"

namespace lgsim {

/// A classical history of the system at t1, t2, t3.
struct Trajectory {
    Spin s1;
    Spin s2;
    Spin s3;

    friend bool operator==(const Trajectory &, const Trajectory &) = default;

    /// Bit 2 = s1, bit 1 = s2, bit 0 = s3 (up = 1).
    std::size_t index() const noexcept;
    static Trajectory from_index(std::size_t i);
    /// e.g. "udd" for up, down, down.
    std::string label() const;
};

inline constexpr std::size_t kTrajectoryCount = 8;

/// Probability assignment over the 8 trajectories. Non-negative, sums to 1
/// within 1e-12 (ContractError otherwise).
class TrajectoryDistribution {
   public:
    explicit TrajectoryDistribution(const std::array<double, kTrajectoryCount> &p);

    static TrajectoryDistribution point_mass(const Trajectory &t);
    static TrajectoryDistribution uniform();

    /// Uniform sample from the probability simplex (normalized exponentials).
    template <class Rng>
    static TrajectoryDistribution sample_uniform(Rng &rng) {
        std::exponential_distribution<double> expo(1.0);
        std::array<double, kTrajectoryCount> w{};
        double z = 0.0;
        for (double &x : w) {
            x = expo(rng);
            z += x;
        }
        for (double &x : w) x /= z;
        return TrajectoryDistribution(w);
    }

    double operator[](const Trajectory &t) const { return p_[t.index()]; }
    const std::array<double, kTrajectoryCount> &values() const noexcept { return p_; }

    /// P(s_i at t_i, s_j at t_j), summing out the third time. Times are 1-based.
    double pair_marginal(int ti, Spin si, int tj, Spin sj) const;

   private:
    std::array<double, kTrajectoryCount> p_;
};

/// Q(s1)Q(s2) + Q(s2)Q(s3) + Q(s1)Q(s3) + 1; always 0 or 4.
double trajectory_f(const Trajectory &t);

CorrelatorSet trajectory_correlators(const Trajectory &t);

/// K_ij = sum over trajectories of Q(s_i)Q(s_j) P(trajectory).
CorrelatorSet correlators_from_distribution(const TrajectoryDistribution &dist);

struct PolytopeExtremum {
    double value;
    TrajectoryDistribution witness;
};

/// Extremes of a linear objective over the simplex sit on vertices, so both
/// are found by scanning the 8 point masses.
PolytopeExtremum min_f_over_polytope();
PolytopeExtremum max_f_over_polytope();

/// min g = K12 + K23 + K13 over the polytope (= -1).
PolytopeExtremum min_g_over_polytope();

struct CorruptionModel {
    MacrorealistStance stance;
    double zeta;
};

/// Minimum over the polytope of the corrupted LG function
///   moderate:    (1 - zeta) g + 1
///   adversarial: (1 - zeta) g - 3 zeta + 1
/// Throws DomainError unless zeta in [0, 1].
double corrupted_f_bound(const CorruptionModel &model);

struct StationarityCounterexample {
    TrajectoryDistribution distribution;
    /// K12 + K23 + K13 + 1, the unrestricted LG function (>= 0).
    double f_original;
    /// K(tau) + K(2 tau) with K(tau) = K12 and K(2 tau) = K13, the quantity a
    /// stationarity-assuming analysis bounds below by -1.
    double f_stationary_assumed;
};

/// A valid macrorealist distribution obeying f >= 0 that nonetheless beats
/// the stationarity-based inequality K(tau) + K(2 tau) >= -1.
StationarityCounterexample stationarity_counterexample();

/// min over the polytope of 2 K12 + K13 + 1 (the LG function after
/// substituting K23 = K12).
PolytopeExtremum min_stationary_f_over_polytope();

}  // namespace lgsim
