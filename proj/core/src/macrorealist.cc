#include "lgsim/macrorealist.h"

#include <cmath>
#include <functional>
#include <sstream>

#include "lgsim/errors.h"

namespace lgsim {

namespace {

Spin bit_spin(std::size_t i, unsigned shift) { return ((i >> shift) & 1u) ? Spin::up : Spin::down; }

Spin spin_at(const Trajectory &t, int time) {
    switch (time) {
        case 1: return t.s1;
        case 2: return t.s2;
        case 3: return t.s3;
    }
    throw ContractError("trajectory time index must be 1, 2 or 3");
}

PolytopeExtremum scan_vertices(const std::function<double(const Trajectory &)> &objective, bool minimize) {
    std::size_t best = 0;
    double best_value = objective(Trajectory::from_index(0));
    for (std::size_t i = 1; i < kTrajectoryCount; ++i) {
        const double v = objective(Trajectory::from_index(i));
        if (minimize ? v < best_value : v > best_value) {
            best = i;
            best_value = v;
        }
    }
    return {best_value, TrajectoryDistribution::point_mass(Trajectory::from_index(best))};
}

}  // namespace

std::size_t Trajectory::index() const noexcept {
    return (static_cast<std::size_t>(s1) << 2) | (static_cast<std::size_t>(s2) << 1) | static_cast<std::size_t>(s3);
}

Trajectory Trajectory::from_index(std::size_t i) {
    if (i >= kTrajectoryCount) {
        throw ContractError("trajectory index out of range");
    }
    return {bit_spin(i, 2), bit_spin(i, 1), bit_spin(i, 0)};
}

std::string Trajectory::label() const {
    const auto c = [](Spin s) { return s == Spin::up ? 'u' : 'd'; };
    return {c(s1), c(s2), c(s3)};
}

TrajectoryDistribution::TrajectoryDistribution(const std::array<double, kTrajectoryCount> &p) : p_(p) {
    double sum = 0.0;
    for (double x : p_) {
        if (!(x >= 0.0)) {
            throw ContractError("trajectory probabilities must be non-negative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "trajectory probabilities sum to " << sum << ", not 1";
        throw ContractError(os.str());
    }
}

TrajectoryDistribution TrajectoryDistribution::point_mass(const Trajectory &t) {
    std::array<double, kTrajectoryCount> p{};
    p[t.index()] = 1.0;
    return TrajectoryDistribution(p);
}

TrajectoryDistribution TrajectoryDistribution::uniform() {
    std::array<double, kTrajectoryCount> p{};
    p.fill(1.0 / kTrajectoryCount);
    return TrajectoryDistribution(p);
}

double TrajectoryDistribution::pair_marginal(int ti, Spin si, int tj, Spin sj) const {
    double total = 0.0;
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        const Trajectory t = Trajectory::from_index(i);
        if (spin_at(t, ti) == si && spin_at(t, tj) == sj) {
            total += p_[i];
        }
    }
    return total;
}

CorrelatorSet trajectory_correlators(const Trajectory &t) {
    const int q1 = q_value(t.s1), q2 = q_value(t.s2), q3 = q_value(t.s3);
    return {static_cast<double>(q1 * q2), static_cast<double>(q2 * q3), static_cast<double>(q1 * q3)};
}

double trajectory_f(const Trajectory &t) { return trajectory_correlators(t).f(); }

CorrelatorSet correlators_from_distribution(const TrajectoryDistribution &dist) {
    CorrelatorSet k{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        const CorrelatorSet v = trajectory_correlators(Trajectory::from_index(i));
        const double p = dist.values()[i];
        k.k12 += v.k12 * p;
        k.k23 += v.k23 * p;
        k.k13 += v.k13 * p;
    }
    return k;
}

PolytopeExtremum min_f_over_polytope() { return scan_vertices(trajectory_f, true); }

PolytopeExtremum max_f_over_polytope() { return scan_vertices(trajectory_f, false); }

PolytopeExtremum min_g_over_polytope() {
    return scan_vertices([](const Trajectory &t) { return trajectory_correlators(t).g(); }, true);
}

double corrupted_f_bound(const CorruptionModel &model) {
    if (!(model.zeta >= 0.0 && model.zeta <= 1.0)) {
        throw DomainError("venality must lie in [0, 1]");
    }
    const double zeta = model.zeta;
    const auto corrupted = [&](const Trajectory &t) {
        const double g = trajectory_correlators(t).g();
        const double f = (1.0 - zeta) * g + 1.0;
        return model.stance == MacrorealistStance::moderate ? f : f - 3.0 * zeta;
    };
    // (1 - zeta) >= 0, so the minimizing vertex is the g-minimizing one.
    return scan_vertices(corrupted, true).value;
}

PolytopeExtremum min_stationary_f_over_polytope() {
    return scan_vertices(
        [](const Trajectory &t) {
            const CorrelatorSet k = trajectory_correlators(t);
            return 2.0 * k.k12 + k.k13 + 1.0;
        },
        true);
}

StationarityCounterexample stationarity_counterexample() {
    // Among the vertices, take the one that minimizes K(tau) + K(2 tau) while
    // keeping f >= 0; every vertex has f >= 0, so this is the global minimum.
    const PolytopeExtremum best = scan_vertices(
        [](const Trajectory &t) {
            const CorrelatorSet k = trajectory_correlators(t);
            return k.k12 + k.k13;
        },
        true);
    const CorrelatorSet k = correlators_from_distribution(best.witness);
    return {best.witness, k.f(), k.k12 + k.k13};
}

}  // namespace lgsim
