#pragma once

#include <array>
#include <cstddef>
#include <variant>

#include "lgsim/state.h"

namespace lgsim {

/// CODATA 2018.
inline constexpr double kBohrMagneton = 9.2740100783e-24;  // J/T
inline constexpr double kBoltzmann = 1.380649e-23;         // J/K
inline constexpr double kSiPElectronG = 1.9987;

inline constexpr double kProbabilityTolerance = 1e-12;

/// Occupation probabilities over (dd, du, ud, uu), |system, ancilla> order.
///
/// For the ancilla-preparation algebra the four entries are also called
/// (a, c, b, d) in that order: a and b are the correctly prepared (ancilla
/// down) populations for system down/up, c and d the two ancilla-up ones.
/// In the CNOT-circuit layout c is the inactive state and d the active
/// corrupt state.
class PopulationVector {
   public:
    /// Throws ContractError unless every entry is in [0, 1] and the sum is 1
    /// within 1e-12.
    explicit PopulationVector(const std::array<double, 4> &p);

    /// Scales non-negative weights to unit sum. Throws ContractError on a
    /// negative weight or zero total.
    static PopulationVector normalized(const std::array<double, 4> &weights);

    double operator[](std::size_t i) const { return p_[i]; }
    const std::array<double, 4> &values() const noexcept { return p_; }

    double p_dd() const noexcept { return p_[basis::dd]; }
    double p_du() const noexcept { return p_[basis::du]; }
    double p_ud() const noexcept { return p_[basis::ud]; }
    double p_uu() const noexcept { return p_[basis::uu]; }

    double a() const noexcept { return p_dd(); }
    double c() const noexcept { return p_du(); }
    double b() const noexcept { return p_ud(); }
    double d() const noexcept { return p_uu(); }

    friend bool operator==(const PopulationVector &, const PopulationVector &) = default;

   private:
    std::array<double, 4> p_;
};

struct ThermalParameters {
    double field_tesla;
    double temperature_kelvin;
    double g_factor = kSiPElectronG;
};

struct ThermalPreparation {
    friend bool operator==(const ThermalPreparation &, const ThermalPreparation &) = default;
};
struct HyperpolarizedPreparation {
    friend bool operator==(const HyperpolarizedPreparation &, const HyperpolarizedPreparation &) = default;
};
struct CustomPreparation {
    PopulationVector populations;
    friend bool operator==(const CustomPreparation &, const CustomPreparation &) = default;
};
using PreparationMode = std::variant<ThermalPreparation, HyperpolarizedPreparation, CustomPreparation>;

/// exp(-g mu_B B / (k_B T)). Throws DomainError for non-positive B, T or g.
double boltzmann_alpha(const ThermalParameters &params);

/// Both system states equally likely; within each, ancilla down carries
/// weight 1 and ancilla up weight alpha. alpha must lie in [0, 1]; the
/// endpoints are the perfect-polarization and infinite-temperature limits.
PopulationVector thermal_populations(double alpha);

/// (a, b, c, d) = (1, alpha, alpha, alpha^2) placed in the CNOT layout
/// (dd, du, ud, uu) = (a, c, b, d). alpha must lie in [0, 1].
PopulationVector hyperpolarized_populations(double alpha);

/// The inactive population relocated for the anti-CNOT circuits:
/// (a, c, b, d) -> (a, d, b, c). Same physical populations, different slots.
PopulationVector anti_cnot_layout(const PopulationVector &cnot_layout);

/// The single four-level distribution that is equivalent, for both circuit
/// types, to the excised three-level problem: (a, d, b, d) / (a + b + 2d).
PopulationVector reduced_equivalent(const PopulationVector &cnot_layout);

enum class VenalityMode { raw, reduced };

/// raw: (c + d) / Z. reduced: 2d / (a + b + 2d), the inactive state c excised.
double venality(const PopulationVector &pops, VenalityMode mode);

/// Reduced venality where a fraction `delta` of the inactive population leaks
/// into the corrupt, participating ensemble:
///   (2d + delta c) / (a + b + 2d + delta c).
/// Throws DomainError unless delta is in [0, 1].
double detuning_corrected_venality(const PopulationVector &pops, double delta);

/// Adds the unobservable identity background to a measured pseudopure matrix:
///   rho_F = alpha / (2 (1 + alpha)) I + (1 - alpha) / (1 + alpha) rho_pp.
/// alpha must lie in [0, 1); rho_pp must have unit trace (ContractError).
Matrix4c pseudopure_reconstruct(const Matrix4c &rho_pp, double alpha);
TwoQubitState pseudopure_reconstruct(const TwoQubitState &rho_pp, double alpha);

/// Inverse of pseudopure_reconstruct. The result has unit trace but need not
/// be positive.
Matrix4c pseudopure_extract(const Matrix4c &rho_full, double alpha);

/// Initial populations for a preparation mode at the given thermal alpha.
PopulationVector prepare_populations(const PreparationMode &mode, double alpha);

}  // namespace lgsim
