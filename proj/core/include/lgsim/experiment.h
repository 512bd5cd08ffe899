#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgsim/analysis.h"
#include "lgsim/bounds.h"
#include "lgsim/circuit.h"
#include "lgsim/ensemble.h"

namespace lgsim {

/// Everything needed to reproduce one run. Defaults are the 2.6 K thermal
/// Si:P experiment at theta = 2 pi / 3.
struct ExperimentConfig {
    double field_tesla = 3.357;
    double temperature_kelvin = 2.6;
    double g_factor = kSiPElectronG;
    double theta = 2.0943951023931957;  // 2 pi / 3
    PreparationMode preparation = ThermalPreparation{};
    double delta = 0.0;
    bool conditional_u = true;
    std::size_t mc_samples = 4096;
    /// Uniform per-population sigma for the Monte Carlo report; 0 disables it.
    double mc_sigma = 0.0;
    std::uint64_t seed = 0x5eed;
    std::optional<DampingModel> damping;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

/// Flat `key = value` text, `#` starts a comment. Angles accept a `deg:`
/// prefix. Unknown keys are errors. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string &path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig &config);

/// Parses a radian value, or degrees with a `deg:` prefix.
double parse_angle(std::string_view text);

std::string preparation_name(const PreparationMode &mode);

enum class Verdict { violates_adversarial, violates_moderate, no_violation };

const char *to_string(Verdict verdict) noexcept;

/// violates_adversarial when f is below -2 zeta (which implies the moderate
/// bound is beaten too), violates_moderate when only below zeta.
Verdict classify(double f, double zeta);

struct DampingReport {
    /// f computed from the six final populations after forward damping.
    double f_damped;
    /// f after damping_correct on the damped populations.
    double f_corrected;
};

struct RunRecord {
    ExperimentConfig config;
    double alpha;
    CorrelatorSet correlators;
    /// Venality of the ensemble the circuits act on, before leakage.
    double zeta_ideal;
    /// Including the detuning leakage delta; the bounds use this value.
    double zeta;
    double f_sim;
    double f_quantum_closed_form;
    double bound_moderate;
    double bound_adversarial;
    Verdict verdict;
    std::optional<McReport> mc;
    std::optional<DampingReport> damping;
};

/// Initial state handed to all six circuits for this configuration:
/// thermal and custom populations directly, hyperpolarized via its reduced
/// equivalent distribution.
TwoQubitState initial_state(const ExperimentConfig &config, double alpha);

/// Builds the initial state, simulates all six circuits, cross-checks against
/// the closed form, evaluates both bounds, and optionally runs the damping
/// round trip and Monte Carlo report.
RunRecord run_experiment(const ExperimentConfig &config, unsigned jobs = 1);

/// Printf-style "%.12g".
std::string format_number(double x);

/// Two-column `field,value` CSV.
void write_run_csv(std::ostream &out, const RunRecord &record);

inline constexpr std::string_view kLandscapeHeader =
    "theta,zeta,f_quantum,bound_moderate,bound_adversarial,violates_moderate,violates_adversarial";

void write_landscape_csv(std::ostream &out, const std::vector<BoundLandscapePoint> &grid);

}  // namespace lgsim
