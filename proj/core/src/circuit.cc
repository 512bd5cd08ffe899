#include "lgsim/circuit.h"

#include <cmath>

#include "lgsim/errors.h"

namespace lgsim {

namespace {

void require_finite(double theta) {
    if (!std::isfinite(theta)) {
        throw DomainError("rotation angle must be finite");
    }
}

Matrix2c rotation_block(double theta, const SimulationOptions &options) {
    return options.rotation != nullptr ? options.rotation(theta) : system_rotation(theta);
}

// Embeds a 2x2 system operator into the ancilla-down and/or ancilla-up blocks.
Matrix4c embed_system_op(const Matrix2c &op, bool on_ancilla_down, bool on_ancilla_up) {
    Matrix4c m = Matrix4c::Identity();
    const auto place = [&](std::size_t lo, std::size_t hi) {
        const auto i = static_cast<Eigen::Index>(lo);
        const auto j = static_cast<Eigen::Index>(hi);
        m(i, i) = op(0, 0);
        m(i, j) = op(0, 1);
        m(j, i) = op(1, 0);
        m(j, j) = op(1, 1);
    };
    if (on_ancilla_down) place(basis::dd, basis::ud);
    if (on_ancilla_up) place(basis::du, basis::uu);
    return m;
}

GateMatrix evolution(double theta, const SimulationOptions &options) {
    require_finite(theta);
    const Matrix2c u = rotation_block(theta, options);
    return GateMatrix::from_matrix(embed_system_op(u, true, !options.conditional_u));
}

}  // namespace

const char *to_string(CorrelatorPair pair) noexcept {
    switch (pair) {
        case CorrelatorPair::k12: return "K12";
        case CorrelatorPair::k23: return "K23";
        case CorrelatorPair::k13: return "K13";
    }
    return "?";
}

const char *to_string(ProbeTarget target) noexcept {
    return target == ProbeTarget::probe_down ? "probe_down" : "probe_up";
}

Matrix2c system_rotation(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Matrix2c u;
    u << Complex(c, 0.0), Complex(0.0, s), Complex(0.0, s), Complex(c, 0.0);
    return u;
}

GateMatrix rotation_u(double theta) {
    require_finite(theta);
    return GateMatrix::from_matrix(embed_system_op(system_rotation(theta), true, true));
}

GateMatrix conditional_rotation_u(double theta) {
    require_finite(theta);
    return GateMatrix::from_matrix(embed_system_op(system_rotation(theta), true, false));
}

GateMatrix probe_gate(ProbeTarget target) {
    // Permutation swapping the ancilla within the trigger system state only.
    Matrix4c m = Matrix4c::Identity();
    const Spin trigger = target == ProbeTarget::probe_down ? Spin::up : Spin::down;
    const auto lo = static_cast<Eigen::Index>(basis::index(trigger, Spin::down));
    const auto hi = static_cast<Eigen::Index>(basis::index(trigger, Spin::up));
    m(lo, lo) = 0.0;
    m(hi, hi) = 0.0;
    m(lo, hi) = 1.0;
    m(hi, lo) = 1.0;
    return GateMatrix::from_matrix(m);
}

TwoQubitState final_state(const TwoQubitState &initial, CorrelatorPair pair, ProbeTarget target, double theta,
                          const SimulationOptions &options) {
    const GateMatrix u = evolution(theta, options);
    const GateMatrix probe = probe_gate(target);
    switch (pair) {
        case CorrelatorPair::k12:
            return initial.evolved(probe).evolved(u);
        case CorrelatorPair::k23:
            return initial.evolved(u).evolved(probe).evolved(u);
        case CorrelatorPair::k13:
            return initial.evolved(probe).evolved(u).evolved(u);
    }
    throw ContractError("unknown correlator pair");
}

SubExperimentResult run_sub_experiment(const TwoQubitState &initial, CorrelatorPair pair, ProbeTarget target,
                                       double theta, const SimulationOptions &options) {
    const TwoQubitState out = final_state(initial, pair, target, theta, options);
    SubExperimentResult r{};
    r.pair = pair;
    r.target = target;
    r.final_populations = out.populations();
    r.selected_down = r.final_populations[basis::dd];
    r.selected_up = r.final_populations[basis::ud];
    r.discarded = r.final_populations[basis::du] + r.final_populations[basis::uu];
    const Spin inactive_system = target == ProbeTarget::probe_down ? Spin::down : Spin::up;
    const Spin active_system = inactive_system == Spin::down ? Spin::up : Spin::down;
    r.inactive_population = initial.population(basis::index(inactive_system, Spin::up));
    r.active_corrupt_population = initial.population(basis::index(active_system, Spin::up));
    return r;
}

double correlator_from_pair(const SubExperimentResult &down, const SubExperimentResult &up,
                            InactiveNormalization norm) {
    if (down.target != ProbeTarget::probe_down || up.target != ProbeTarget::probe_up) {
        throw ContractError("correlator_from_pair expects a probe_down and a probe_up result");
    }
    if (down.pair != up.pair) {
        throw ContractError("correlator_from_pair given results for different correlators");
    }
    const double selected = down.survival_fraction() + up.survival_fraction();
    if (!(selected > 0.0)) {
        throw DegenerateError("no weight survives post-selection in either circuit");
    }
    const double signed_sum = (down.selected_down - down.selected_up) - (up.selected_down - up.selected_up);
    if (norm == InactiveNormalization::full_ensemble) {
        return signed_sum;
    }
    const double reduced_norm = 1.0 - 0.5 * (down.inactive_population + up.inactive_population) +
                                0.5 * (down.active_corrupt_population + up.active_corrupt_population);
    if (!(reduced_norm > 0.0)) {
        throw DegenerateError("the inactive state holds the entire ensemble");
    }
    return signed_sum / reduced_norm;
}

std::size_t sub_experiment_index(CorrelatorPair pair, ProbeTarget target) noexcept {
    return 2 * static_cast<std::size_t>(pair) + (target == ProbeTarget::probe_up ? 1 : 0);
}

std::array<SubExperimentResult, 6> run_all_sub_experiments(const TwoQubitState &initial, double theta,
                                                           const SimulationOptions &options) {
    std::array<SubExperimentResult, 6> out{};
    for (CorrelatorPair pair : kAllPairs) {
        for (ProbeTarget target : kAllTargets) {
            out[sub_experiment_index(pair, target)] = run_sub_experiment(initial, pair, target, theta, options);
        }
    }
    return out;
}

CorrelatorSet simulate_lg(const TwoQubitState &initial, double theta, const SimulationOptions &options) {
    const auto results = run_all_sub_experiments(initial, theta, options);
    std::array<double, 3> k{};
    for (CorrelatorPair pair : kAllPairs) {
        k[static_cast<std::size_t>(pair)] =
            correlator_from_pair(results[sub_experiment_index(pair, ProbeTarget::probe_down)],
                                 results[sub_experiment_index(pair, ProbeTarget::probe_up)]);
    }
    return {k[0], k[1], k[2]};
}

CorrelatorSet simulate_lg(const TwoQubitState &initial_cnot, const TwoQubitState &initial_anti_cnot, double theta,
                          const SimulationOptions &options) {
    std::array<double, 3> k{};
    for (CorrelatorPair pair : kAllPairs) {
        const auto down = run_sub_experiment(initial_cnot, pair, ProbeTarget::probe_down, theta, options);
        const auto up = run_sub_experiment(initial_anti_cnot, pair, ProbeTarget::probe_up, theta, options);
        k[static_cast<std::size_t>(pair)] = correlator_from_pair(down, up, InactiveNormalization::excise_inactive);
    }
    return {k[0], k[1], k[2]};
}

CorrelatorSet correlators_from_final_populations(std::span<const std::array<double, 4>, 6> finals) {
    std::array<double, 3> k{};
    for (CorrelatorPair pair : kAllPairs) {
        const auto &down = finals[sub_experiment_index(pair, ProbeTarget::probe_down)];
        const auto &up = finals[sub_experiment_index(pair, ProbeTarget::probe_up)];
        k[static_cast<std::size_t>(pair)] =
            (down[basis::dd] - down[basis::ud]) - (up[basis::dd] - up[basis::ud]);
    }
    return {k[0], k[1], k[2]};
}

}  // namespace lgsim
