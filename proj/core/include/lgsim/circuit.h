#pragma once

#include <array>
#include <span>

#include "lgsim/state.h"

namespace lgsim {

/// Which system state a null probe result certifies.
///   probe_down: ancilla flips iff system is up; a surviving ancilla-down
///               certifies system down at probe time.
///   probe_up:   ancilla flips iff system is down.
/// The complementary block is exactly the identity, so a system in the
/// certified state is never touched.
enum class ProbeTarget { probe_down, probe_up };

enum class CorrelatorPair { k12, k23, k13 };

inline constexpr std::array<CorrelatorPair, 3> kAllPairs{CorrelatorPair::k12, CorrelatorPair::k23,
                                                         CorrelatorPair::k13};
inline constexpr std::array<ProbeTarget, 2> kAllTargets{ProbeTarget::probe_down, ProbeTarget::probe_up};

const char *to_string(CorrelatorPair pair) noexcept;
const char *to_string(ProbeTarget target) noexcept;

/// cos(theta/2) I + i sin(theta/2) sigma_x on the system, identity on the ancilla.
/// Throws DomainError for non-finite theta.
GateMatrix rotation_u(double theta);

/// rotation_u restricted to the ancilla-down subspace; identity on ancilla-up.
GateMatrix conditional_rotation_u(double theta);

GateMatrix probe_gate(ProbeTarget target);

/// Optional replacement for rotation_u, used by the acceptance harness to
/// inject faults. Must return a 2x2 unitary acting on the system.
using RotationFn = Matrix2c (*)(double theta);

Matrix2c system_rotation(double theta);

struct SimulationOptions {
    /// Apply U only where the ancilla is down. When false U acts on the
    /// system regardless of the ancilla.
    bool conditional_u = true;
    RotationFn rotation = nullptr;
};

struct SubExperimentResult {
    CorrelatorPair pair;
    ProbeTarget target;
    /// Final diagonal over (dd, du, ud, uu).
    std::array<double, 4> final_populations;
    /// Post-selected weights: system down/up with ancilla down at readout.
    double selected_down;
    double selected_up;
    /// Weight of ancilla-up outcomes, discarded by post-selection.
    double discarded;
    /// Initial population of the state that this circuit never touches
    /// (du for probe_down circuits, uu for probe_up circuits).
    double inactive_population;
    /// Initial population of the ancilla-up state that does take part
    /// (uu for probe_down circuits, du for probe_up circuits).
    double active_corrupt_population;

    double survival_fraction() const noexcept { return selected_down + selected_up; }
};

/// Runs one of the six circuits:
///   k12: probe(t1), U, readout
///   k23: U, probe(t2), U, readout
///   k13: probe(t1), U, U, readout
SubExperimentResult run_sub_experiment(const TwoQubitState &initial, CorrelatorPair pair, ProbeTarget target,
                                       double theta, const SimulationOptions &options = {});

/// Same as above but also returns the final state (for protocol invariants).
TwoQubitState final_state(const TwoQubitState &initial, CorrelatorPair pair, ProbeTarget target, double theta,
                          const SimulationOptions &options = {});

enum class InactiveNormalization {
    /// Signed weights are fractions of the full ensemble.
    full_ensemble,
    /// Excise the frozen inactive state and refill its slot with the active
    /// corrupt population, i.e. divide by (a + b + 2d) / Z. This is the
    /// normalization under which reduced venality 2d / (a + b + 2d) applies.
    excise_inactive,
};

/// Combines the complementary circuits into K_ij:
///   +P_down(sys down) - P_down(sys up) - P_up(sys down) + P_up(sys up).
/// Throws ContractError if the pair/target tags do not match, DegenerateError
/// if the combined selected weight is not positive.
double correlator_from_pair(const SubExperimentResult &result_down, const SubExperimentResult &result_up,
                            InactiveNormalization norm = InactiveNormalization::full_ensemble);

struct CorrelatorSet {
    double k12;
    double k23;
    double k13;

    double g() const noexcept { return k12 + k23 + k13; }
    double f() const noexcept { return g() + 1.0; }
};

/// All six sub-experiments on one shared initial state.
CorrelatorSet simulate_lg(const TwoQubitState &initial, double theta, const SimulationOptions &options = {});

/// Distinct initial states for the CNOT (probe_down) and anti-CNOT (probe_up)
/// circuits, normalized over the participating ensemble only.
CorrelatorSet simulate_lg(const TwoQubitState &initial_cnot, const TwoQubitState &initial_anti_cnot, double theta,
                          const SimulationOptions &options = {});

/// The six results in canonical order: for each pair in (k12, k23, k13),
/// probe_down then probe_up.
std::array<SubExperimentResult, 6> run_all_sub_experiments(const TwoQubitState &initial, double theta,
                                                           const SimulationOptions &options = {});

std::size_t sub_experiment_index(CorrelatorPair pair, ProbeTarget target) noexcept;

/// Correlators from six final diagonals in canonical order, full-ensemble
/// normalization. This is the combination applied to measured populations.
CorrelatorSet correlators_from_final_populations(std::span<const std::array<double, 4>, 6> finals);

}  // namespace lgsim
