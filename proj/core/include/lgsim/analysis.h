#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lgsim/ensemble.h"
#include "lgsim/state.h"

namespace lgsim {

/// Uhlmann fidelity (Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)))^2, in [0, 1].
double fidelity(const TwoQubitState &rho1, const TwoQubitState &rho2);

/// The square-root variant Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)).
inline double root_fidelity(const TwoQubitState &rho1, const TwoQubitState &rho2) {
    return std::sqrt(fidelity(rho1, rho2));
}

/// Per-population standard deviations, aligned with the diagonal.
struct ElementUncertainty {
    std::array<double, 4> sigmas{};

    static ElementUncertainty uniform(double sigma) { return {{sigma, sigma, sigma, sigma}}; }
    ElementUncertainty scaled(double k) const;
};

inline constexpr double kPhysicalityTolerance = 1e-8;

/// True when the Hermitian part of `m` has unit trace (1e-9) and no
/// eigenvalue below -1e-8.
bool is_physical(const Matrix4c &m);

struct McReport {
    double mean_f = 0.0;
    double std_f = 0.0;
    std::size_t n_requested = 0;
    std::size_t n_physical = 0;
    std::size_t n_discarded = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const McReport &, const McReport &) = default;
};

/// Maps the reconstructed matrices of one Monte Carlo draw to an f value.
using FEvaluator = std::function<double(std::span<const Matrix4c>)>;

struct McOptions {
    std::size_t samples = 4096;
    std::uint64_t seed = 0x5eed;
    /// Boltzmann ratio used to add the identity background to each
    /// perturbed pseudopure matrix. 0 means the measured matrices are used as
    /// they are.
    double alpha = 0.0;
    unsigned jobs = 1;
};

/// Monte Carlo propagation of population errors.
///
/// For each draw, every diagonal element of every measured matrix is shifted
/// by an independent normal deviate with that element's sigma; off-diagonal
/// elements are kept. Each matrix is renormalized to unit trace, passed
/// through pseudopure_reconstruct, and checked with is_physical. The draw is
/// discarded when any matrix is unphysical; otherwise `f_eval` scores it.
///
/// Draw i uses an mt19937_64 seeded from splitmix64(seed, i), so results are
/// bit-identical for any `jobs`. Throws DegenerateError if all draws are
/// discarded, ContractError on mismatched spans or samples == 0.
McReport mc_uncertainty(std::span<const Matrix4c> measured, std::span<const ElementUncertainty> sigmas,
                        const FEvaluator &f_eval, const McOptions &options);

/// Single-matrix convenience form.
McReport mc_uncertainty(const TwoQubitState &rho_pp, const ElementUncertainty &sigma, std::size_t n,
                        std::uint64_t seed, const std::function<double(const Matrix4c &)> &f_eval,
                        double alpha = 0.0);

/// The six-matrix LG evaluator: diagonals in canonical sub-experiment order
/// combined into f.
FEvaluator lg_function_evaluator();

/// Signal retention per pi pulse for each tomography pulse type, and how many
/// pulses of each type the readout of each population passes through.
struct DampingModel {
    double retention_mw1 = 1.0;
    double retention_mw2 = 1.0;
    double retention_rf = 1.0;
    /// pulse_counts[population][k], k = 0 (MW1), 1 (MW2), 2 (RF).
    std::array<std::array<unsigned, 3>, 4> pulse_counts{};

    /// Throws DomainError unless every retention is in (0, 1].
    void validate() const;

    /// Product of retention^count along the readout of population i.
    double retention_factor(std::size_t i) const;

    friend bool operator==(const DampingModel &, const DampingModel &) = default;
};

/// Forward model: what an ideal population reads as after the tomography
/// sequence's amplitude damping, renormalized to unit sum.
PopulationVector damping_apply(const PopulationVector &ideal, const DampingModel &model);

struct DampingCorrection {
    PopulationVector corrected;
    ElementUncertainty inflated_sigmas;
};

/// Divides each population by its retention factor and renormalizes. Sigmas
/// are inflated by the same per-element factor and the renormalization.
/// Throws ContractError if the corrected entries are not valid probabilities.
DampingCorrection damping_correct(const PopulationVector &measured, const DampingModel &model,
                                  const ElementUncertainty &sigmas = {});

}  // namespace lgsim
