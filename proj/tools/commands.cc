#include "commands.h"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "lgsim/bounds.h"
#include "lgsim/errors.h"
#include "lgsim/macrorealist.h"

namespace lgsim::cli {

namespace {

// Writes through `emit` either to `out` or to the --out file.
int emit_to(const CommonOptions &opts, std::ostream &out, std::ostream &err,
            const std::function<void(std::ostream &)> &emit) {
    if (!opts.out_path) {
        emit(out);
        return kExitOk;
    }
    std::ofstream file(*opts.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << *opts.out_path << "' for writing\n";
        return kExitIo;
    }
    emit(file);
    file.flush();
    if (!file) {
        err << "error: failed writing '" << *opts.out_path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

// Translates library exceptions into the CLI's exit codes.
int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

ExperimentConfig resolve_config(const CommonOptions &opts) {
    ExperimentConfig config = opts.config_path ? load_config(*opts.config_path) : ExperimentConfig{};
    if (opts.seed) config.seed = *opts.seed;
    if (opts.theta) config.theta = parse_angle(*opts.theta);
    config.validate();
    return config;
}

int cmd_run(const CommonOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const RunRecord record = run_experiment(resolve_config(opts), opts.jobs);
        const int written = emit_to(opts, out, err, [&](std::ostream &os) { write_run_csv(os, record); });
        if (written != kExitOk) return written;
        return record.verdict == Verdict::no_violation ? int(kExitFailure) : int(kExitOk);
    });
}

int cmd_landscape(const CommonOptions &opts, std::size_t theta_steps, std::size_t zeta_steps, std::ostream &out,
                  std::ostream &err) {
    return guarded(err, [&] {
        const auto grid = landscape_grid(theta_steps, zeta_steps, opts.jobs);
        return emit_to(opts, out, err, [&](std::ostream &os) { write_landscape_csv(os, grid); });
    });
}

int cmd_verify(std::ostream &out, const AcceptanceHarness &harness) {
    const auto results = run_acceptance_suite(harness);
    print_acceptance_report(out, results);
    out << "critical venality: moderate " << format_number(critical_venality(MacrorealistStance::moderate))
        << ", adversarial " << format_number(critical_venality(MacrorealistStance::adversarial)) << '\n';
    return all_passed(results) ? kExitOk : kExitFailure;
}

int cmd_bounds(const CommonOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const double theta = opts.theta ? parse_angle(*opts.theta) : ExperimentConfig{}.theta;
        const double zeta = opts.zeta.value_or(0.0);
        const double fq = f_quantum(theta, zeta);
        const double bm = f_bound(MacrorealistStance::moderate, zeta);
        const double ba = f_bound(MacrorealistStance::adversarial, zeta);
        return emit_to(opts, out, err, [&](std::ostream &os) {
            os << kLandscapeHeader << ",critical_moderate,critical_adversarial\n";
            os << format_number(theta) << ',' << format_number(zeta) << ',' << format_number(fq) << ','
               << format_number(bm) << ',' << format_number(ba) << ','
               << bool_text(violates(fq, MacrorealistStance::moderate, zeta)) << ','
               << bool_text(violates(fq, MacrorealistStance::adversarial, zeta)) << ','
               << format_number(critical_venality(MacrorealistStance::moderate)) << ','
               << format_number(critical_venality(MacrorealistStance::adversarial)) << '\n';
        });
    });
}

int cmd_mr_polytope(const CommonOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const double zeta = opts.zeta.value_or(0.0);
        return emit_to(opts, out, err, [&](std::ostream &os) {
            os << "row,label,K12,K23,K13,f,k_tau_plus_k_2tau\n";
            const auto line = [&](const std::string &row, const std::string &label, const CorrelatorSet &k,
                                  double f) {
                os << row << ',' << label << ',' << format_number(k.k12) << ',' << format_number(k.k23) << ','
                   << format_number(k.k13) << ',' << format_number(f) << ',' << format_number(k.k12 + k.k13) << '\n';
            };
            for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
                const Trajectory t = Trajectory::from_index(i);
                const CorrelatorSet k = trajectory_correlators(t);
                line("vertex", t.label(), k, k.f());
            }
            const auto support = [](const TrajectoryDistribution &d) {
                for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
                    if (d.values()[i] == 1.0) return Trajectory::from_index(i).label();
                }
                return std::string("mixed");
            };
            const PolytopeExtremum lo = min_f_over_polytope();
            const PolytopeExtremum hi = max_f_over_polytope();
            line("min_f", support(lo.witness), correlators_from_distribution(lo.witness), lo.value);
            line("max_f", support(hi.witness), correlators_from_distribution(hi.witness), hi.value);
            const StationarityCounterexample ce = stationarity_counterexample();
            line("stationarity_counterexample", support(ce.distribution),
                 correlators_from_distribution(ce.distribution), ce.f_original);
            const PolytopeExtremum g = min_g_over_polytope();
            const CorrelatorSet kg = correlators_from_distribution(g.witness);
            line("corrupted_moderate_bound", "zeta=" + format_number(zeta), kg,
                 corrupted_f_bound({MacrorealistStance::moderate, zeta}));
            line("corrupted_adversarial_bound", "zeta=" + format_number(zeta), kg,
                 corrupted_f_bound({MacrorealistStance::adversarial, zeta}));
        });
    });
}

}  // namespace lgsim::cli
