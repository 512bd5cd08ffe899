#include "lgsim/experiment.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lgsim/errors.h"

namespace lgsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double to_double(std::string_view field, std::string_view text) {
    double value = 0.0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
        throw ConfigError(std::string(field), "not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

template <class Int>
Int to_integer(std::string_view field, std::string_view text) {
    Int value{};
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError(std::string(field), "not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

bool to_bool(std::string_view field, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(std::string(field), "not a boolean: '" + std::string(text) + "'");
}

std::string shortest(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

DampingModel &damping_of(ExperimentConfig &c) {
    if (!c.damping) c.damping = DampingModel{};
    return *c.damping;
}

// Venality including leakage of the inactive population. Hyperpolarized runs
// use the excised (reduced) form; thermal and custom runs share one state for
// both circuits, so each circuit's inactive slot is one of du/uu.
double effective_venality(const ExperimentConfig &config, const PopulationVector &pops, double zeta_ideal) {
    if (std::holds_alternative<HyperpolarizedPreparation>(config.preparation)) {
        return detuning_corrected_venality(pops, config.delta);
    }
    const double leak = config.delta * 0.5 * (pops.p_du() + pops.p_uu());
    return (zeta_ideal + leak) / (1.0 + leak);
}

}  // namespace

double parse_angle(std::string_view text) {
    text = trim(text);
    constexpr std::string_view kDeg = "deg:";
    if (text.starts_with(kDeg)) {
        return to_double("theta", trim(text.substr(kDeg.size()))) * std::numbers::pi / 180.0;
    }
    return to_double("theta", text);
}

std::string preparation_name(const PreparationMode &mode) {
    switch (mode.index()) {
        case 0: return "thermal";
        case 1: return "hyperpolarized";
        default: return "custom";
    }
}

void ExperimentConfig::validate() const {
    if (!(field_tesla > 0.0)) throw ConfigError("B", "must be positive");
    if (!(temperature_kelvin > 0.0)) throw ConfigError("T", "must be positive");
    if (!(g_factor > 0.0)) throw ConfigError("g_factor", "must be positive");
    if (!std::isfinite(theta)) throw ConfigError("theta", "must be finite");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta", "must lie in [0, 1]");
    if (mc_samples < 1) throw ConfigError("mc_samples", "must be at least 1");
    if (!(mc_sigma >= 0.0) || !std::isfinite(mc_sigma)) throw ConfigError("mc_sigma", "must be non-negative");
    if (damping) {
        try {
            damping->validate();
        } catch (const DomainError &e) {
            throw ConfigError("damping", e.what());
        }
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::optional<std::array<double, 4>> custom;
    std::string prep = "thermal";
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "B") {
            c.field_tesla = to_double(key, value);
        } else if (key == "T") {
            c.temperature_kelvin = to_double(key, value);
        } else if (key == "g_factor") {
            c.g_factor = to_double(key, value);
        } else if (key == "theta") {
            c.theta = parse_angle(value);
        } else if (key == "preparation") {
            prep = std::string(value);
            if (prep != "thermal" && prep != "hyperpolarized" && prep != "custom") {
                throw ConfigError(key, "expected thermal, hyperpolarized or custom");
            }
        } else if (key == "custom_populations") {
            const auto parts = split_commas(value);
            if (parts.size() != 4) throw ConfigError(key, "expected four comma-separated values");
            std::array<double, 4> p{};
            for (std::size_t i = 0; i < 4; ++i) p[i] = to_double(key, parts[i]);
            custom = p;
        } else if (key == "delta") {
            c.delta = to_double(key, value);
        } else if (key == "conditional_u") {
            c.conditional_u = to_bool(key, value);
        } else if (key == "mc_samples") {
            c.mc_samples = to_integer<std::size_t>(key, value);
        } else if (key == "mc_sigma") {
            c.mc_sigma = to_double(key, value);
        } else if (key == "seed") {
            c.seed = to_integer<std::uint64_t>(key, value);
        } else if (key == "retention_mw1") {
            damping_of(c).retention_mw1 = to_double(key, value);
        } else if (key == "retention_mw2") {
            damping_of(c).retention_mw2 = to_double(key, value);
        } else if (key == "retention_rf") {
            damping_of(c).retention_rf = to_double(key, value);
        } else if (key == "pulse_counts") {
            const auto parts = split_commas(value);
            if (parts.size() != 12) {
                throw ConfigError(key, "expected 12 counts (4 populations x MW1,MW2,RF)");
            }
            auto &counts = damping_of(c).pulse_counts;
            for (std::size_t i = 0; i < 12; ++i) counts[i / 3][i % 3] = to_integer<unsigned>(key, parts[i]);
        } else {
            throw ConfigError(key, "unknown configuration key");
        }
    }

    if (prep == "custom") {
        if (!custom) throw ConfigError("custom_populations", "required when preparation = custom");
        try {
            c.preparation = CustomPreparation{PopulationVector(*custom)};
        } catch (const ContractError &e) {
            throw ConfigError("custom_populations", e.what());
        }
    } else if (custom) {
        throw ConfigError("custom_populations", "only allowed when preparation = custom");
    } else if (prep == "hyperpolarized") {
        c.preparation = HyperpolarizedPreparation{};
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig &c) {
    std::ostringstream os;
    os << "B = " << shortest(c.field_tesla) << '\n';
    os << "T = " << shortest(c.temperature_kelvin) << '\n';
    os << "g_factor = " << shortest(c.g_factor) << '\n';
    os << "theta = " << shortest(c.theta) << '\n';
    os << "preparation = " << preparation_name(c.preparation) << '\n';
    if (const auto *custom = std::get_if<CustomPreparation>(&c.preparation)) {
        const auto &p = custom->populations.values();
        os << "custom_populations = " << shortest(p[0]) << ", " << shortest(p[1]) << ", " << shortest(p[2]) << ", "
           << shortest(p[3]) << '\n';
    }
    os << "delta = " << shortest(c.delta) << '\n';
    os << "conditional_u = " << (c.conditional_u ? "true" : "false") << '\n';
    os << "mc_samples = " << c.mc_samples << '\n';
    os << "mc_sigma = " << shortest(c.mc_sigma) << '\n';
    os << "seed = " << c.seed << '\n';
    if (c.damping) {
        os << "retention_mw1 = " << shortest(c.damping->retention_mw1) << '\n';
        os << "retention_mw2 = " << shortest(c.damping->retention_mw2) << '\n';
        os << "retention_rf = " << shortest(c.damping->retention_rf) << '\n';
        os << "pulse_counts = ";
        for (std::size_t i = 0; i < 12; ++i) {
            os << (i ? ", " : "") << c.damping->pulse_counts[i / 3][i % 3];
        }
        os << '\n';
    }
    return os.str();
}

const char *to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::violates_adversarial: return "violates_adversarial";
        case Verdict::violates_moderate: return "violates_moderate";
        case Verdict::no_violation: return "no_violation";
    }
    return "?";
}

Verdict classify(double f, double zeta) {
    if (violates(f, MacrorealistStance::adversarial, zeta)) return Verdict::violates_adversarial;
    if (violates(f, MacrorealistStance::moderate, zeta)) return Verdict::violates_moderate;
    return Verdict::no_violation;
}

TwoQubitState initial_state(const ExperimentConfig &config, double alpha) {
    const PopulationVector pops = prepare_populations(config.preparation, alpha);
    if (std::holds_alternative<HyperpolarizedPreparation>(config.preparation)) {
        return TwoQubitState::diagonal(reduced_equivalent(pops));
    }
    return TwoQubitState::diagonal(pops);
}

RunRecord run_experiment(const ExperimentConfig &config, unsigned jobs) {
    config.validate();
    RunRecord r{};
    r.config = config;
    r.alpha = boltzmann_alpha({config.field_tesla, config.temperature_kelvin, config.g_factor});

    const PopulationVector pops = prepare_populations(config.preparation, r.alpha);
    const TwoQubitState rho0 = initial_state(config, r.alpha);
    SimulationOptions sim;
    sim.conditional_u = config.conditional_u;

    const auto results = run_all_sub_experiments(rho0, config.theta, sim);
    std::array<double, 3> k{};
    for (CorrelatorPair pair : kAllPairs) {
        k[static_cast<std::size_t>(pair)] = correlator_from_pair(results[sub_experiment_index(pair, ProbeTarget::probe_down)],
                                                                 results[sub_experiment_index(pair, ProbeTarget::probe_up)]);
    }
    r.correlators = {k[0], k[1], k[2]};
    r.f_sim = r.correlators.f();

    const PopulationVector simulated(rho0.populations());
    r.zeta_ideal = venality(simulated, VenalityMode::raw);
    r.zeta = effective_venality(config, pops, r.zeta_ideal);
    r.f_quantum_closed_form = f_quantum(config.theta, r.zeta);
    r.bound_moderate = f_bound(MacrorealistStance::moderate, r.zeta);
    r.bound_adversarial = f_bound(MacrorealistStance::adversarial, r.zeta);
    r.verdict = classify(r.f_sim, r.zeta);

    std::array<std::array<double, 4>, 6> finals{};
    for (std::size_t i = 0; i < 6; ++i) finals[i] = results[i].final_populations;

    if (config.damping) {
        std::array<std::array<double, 4>, 6> damped{};
        std::array<std::array<double, 4>, 6> corrected{};
        for (std::size_t i = 0; i < 6; ++i) {
            const PopulationVector measured = damping_apply(PopulationVector::normalized(finals[i]), *config.damping);
            damped[i] = measured.values();
            corrected[i] = damping_correct(measured, *config.damping).corrected.values();
        }
        r.damping = DampingReport{correlators_from_final_populations(damped).f(),
                                  correlators_from_final_populations(corrected).f()};
    }

    if (config.mc_sigma > 0.0) {
        std::vector<Matrix4c> measured;
        measured.reserve(6);
        for (std::size_t i = 0; i < 6; ++i) {
            const TwoQubitState out =
                final_state(rho0, results[i].pair, results[i].target, config.theta, sim);
            measured.push_back(pseudopure_extract(out.matrix(), r.alpha));
        }
        const std::vector<ElementUncertainty> sigmas(6, ElementUncertainty::uniform(config.mc_sigma));
        McOptions mc;
        mc.samples = config.mc_samples;
        mc.seed = config.seed;
        mc.alpha = r.alpha;
        mc.jobs = jobs;
        r.mc = mc_uncertainty(measured, sigmas, lg_function_evaluator(), mc);
    }
    return r;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_run_csv(std::ostream &out, const RunRecord &r) {
    const auto row = [&](std::string_view key, const std::string &value) { out << key << ',' << value << '\n'; };
    out << "field,value\n";
    row("preparation", preparation_name(r.config.preparation));
    row("B", format_number(r.config.field_tesla));
    row("T", format_number(r.config.temperature_kelvin));
    row("g_factor", format_number(r.config.g_factor));
    row("theta", format_number(r.config.theta));
    row("delta", format_number(r.config.delta));
    row("conditional_u", r.config.conditional_u ? "true" : "false");
    row("alpha", format_number(r.alpha));
    row("zeta_ideal", format_number(r.zeta_ideal));
    row("zeta", format_number(r.zeta));
    row("K12", format_number(r.correlators.k12));
    row("K23", format_number(r.correlators.k23));
    row("K13", format_number(r.correlators.k13));
    row("g", format_number(r.correlators.g()));
    row("f_sim", format_number(r.f_sim));
    row("f_quantum_closed_form", format_number(r.f_quantum_closed_form));
    row("bound_moderate", format_number(r.bound_moderate));
    row("bound_adversarial", format_number(r.bound_adversarial));
    row("verdict", to_string(r.verdict));
    if (r.damping) {
        row("f_damped", format_number(r.damping->f_damped));
        row("f_damping_corrected", format_number(r.damping->f_corrected));
    }
    if (r.mc) {
        row("mc_mean_f", format_number(r.mc->mean_f));
        row("mc_std_f", format_number(r.mc->std_f));
        row("mc_n_requested", std::to_string(r.mc->n_requested));
        row("mc_n_physical", std::to_string(r.mc->n_physical));
        row("mc_n_discarded", std::to_string(r.mc->n_discarded));
        row("mc_seed", std::to_string(r.mc->seed));
    }
}

void write_landscape_csv(std::ostream &out, const std::vector<BoundLandscapePoint> &grid) {
    out << kLandscapeHeader << '\n';
    for (const auto &p : grid) {
        out << format_number(p.theta) << ',' << format_number(p.zeta) << ',' << format_number(p.f_quantum) << ','
            << format_number(p.f_bound_moderate) << ',' << format_number(p.f_bound_adversarial) << ','
            << (violates(p.f_quantum, MacrorealistStance::moderate, p.zeta) ? "true" : "false") << ','
            << (violates(p.f_quantum, MacrorealistStance::adversarial, p.zeta) ? "true" : "false") << '\n';
    }
}

}  // namespace lgsim
