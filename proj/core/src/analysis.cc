#include "lgsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lgsim/circuit.h"
#include "lgsim/errors.h"

namespace lgsim {

namespace {

Matrix4c psd_sqrt(const Matrix4c &m) {
    const Matrix4c herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm);
    const Eigen::Vector4d roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t draw_seed(std::uint64_t seed, std::uint64_t draw) { return splitmix64(splitmix64(seed) ^ draw); }

}  // namespace

// Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)) equals the trace norm of
// sqrt(rho1) sqrt(rho2). Summing singular values avoids taking a second
// square root of eigenvalue noise on rank-deficient states.
double fidelity(const TwoQubitState &rho1, const TwoQubitState &rho2) {
    const Matrix4c product = psd_sqrt(rho1.matrix()) * psd_sqrt(rho2.matrix());
    Eigen::JacobiSVD<Matrix4c> svd(product);
    const double trace_norm = svd.singularValues().sum();
    return trace_norm * trace_norm;
}

ElementUncertainty ElementUncertainty::scaled(double k) const {
    ElementUncertainty out = *this;
    for (double &s : out.sigmas) s *= k;
    return out;
}

bool is_physical(const Matrix4c &m) {
    if (!m.allFinite()) return false;
    if (std::abs(m.trace().real() - 1.0) > 1e-9) return false;
    return min_eigenvalue(m) >= -kPhysicalityTolerance;
}

McReport mc_uncertainty(std::span<const Matrix4c> measured, std::span<const ElementUncertainty> sigmas,
                        const FEvaluator &f_eval, const McOptions &options) {
    if (measured.empty() || measured.size() != sigmas.size()) {
        throw ContractError("mc_uncertainty needs one uncertainty per measured matrix");
    }
    if (options.samples == 0) {
        throw ContractError("mc_uncertainty needs at least one sample");
    }
    for (const auto &u : sigmas) {
        for (double s : u.sigmas) {
            if (!(s >= 0.0) || !std::isfinite(s)) {
                throw ContractError("element uncertainties must be finite and non-negative");
            }
        }
    }

    constexpr double kDiscarded = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> scores(options.samples, kDiscarded);

    const auto run_draws = [&](std::size_t begin, std::size_t end) {
        std::vector<Matrix4c> draw(measured.size());
        for (std::size_t i = begin; i < end; ++i) {
            std::mt19937_64 rng(draw_seed(options.seed, i));
            std::normal_distribution<double> normal(0.0, 1.0);
            bool physical = true;
            for (std::size_t m = 0; m < measured.size(); ++m) {
                Matrix4c rho = measured[m];
                for (Eigen::Index k = 0; k < 4; ++k) {
                    rho(k, k) += sigmas[m].sigmas[static_cast<std::size_t>(k)] * normal(rng);
                }
                const double tr = rho.trace().real();
                if (!(tr > 0.0)) {
                    physical = false;
                    continue;
                }
                rho /= tr;
                draw[m] = pseudopure_reconstruct(rho, options.alpha);
                physical = physical && is_physical(draw[m]);
            }
            if (physical) {
                scores[i] = f_eval(std::span<const Matrix4c>(draw));
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, options.samples);
    if (workers == 1) {
        run_draws(0, options.samples);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(run_draws, options.samples * w / workers, options.samples * (w + 1) / workers);
        }
    }

    McReport report;
    report.n_requested = options.samples;
    report.seed = options.seed;
    // Welford: identical scores give an exactly zero spread.
    double mean = 0.0;
    double m2 = 0.0;
    for (double s : scores) {
        if (std::isnan(s)) continue;
        ++report.n_physical;
        const double delta = s - mean;
        mean += delta / static_cast<double>(report.n_physical);
        m2 += delta * (s - mean);
    }
    report.n_discarded = options.samples - report.n_physical;
    if (report.n_physical == 0) {
        throw DegenerateError("every Monte Carlo draw was unphysical");
    }
    report.mean_f = mean;
    report.std_f = report.n_physical > 1 ? std::sqrt(m2 / static_cast<double>(report.n_physical - 1)) : 0.0;
    return report;
}

McReport mc_uncertainty(const TwoQubitState &rho_pp, const ElementUncertainty &sigma, std::size_t n,
                        std::uint64_t seed, const std::function<double(const Matrix4c &)> &f_eval, double alpha) {
    const Matrix4c m = rho_pp.matrix();
    McOptions options;
    options.samples = n;
    options.seed = seed;
    options.alpha = alpha;
    return mc_uncertainty(std::span<const Matrix4c>(&m, 1), std::span<const ElementUncertainty>(&sigma, 1),
                          [&](std::span<const Matrix4c> draw) { return f_eval(draw[0]); }, options);
}

FEvaluator lg_function_evaluator() {
    return [](std::span<const Matrix4c> draw) {
        if (draw.size() != 6) {
            throw ContractError("LG evaluation needs the six sub-experiment matrices");
        }
        std::array<std::array<double, 4>, 6> finals{};
        for (std::size_t m = 0; m < 6; ++m) {
            for (Eigen::Index k = 0; k < 4; ++k) {
                finals[m][static_cast<std::size_t>(k)] = draw[m](k, k).real();
            }
        }
        return correlators_from_final_populations(finals).f();
    };
}

void DampingModel::validate() const {
    for (double r : {retention_mw1, retention_mw2, retention_rf}) {
        if (!(r > 0.0 && r <= 1.0)) {
            std::ostringstream os;
            os << "pulse retention " << r << " outside (0, 1]";
            throw DomainError(os.str());
        }
    }
}

double DampingModel::retention_factor(std::size_t i) const {
    const auto &counts = pulse_counts.at(i);
    return std::pow(retention_mw1, counts[0]) * std::pow(retention_mw2, counts[1]) *
           std::pow(retention_rf, counts[2]);
}

PopulationVector damping_apply(const PopulationVector &ideal, const DampingModel &model) {
    model.validate();
    std::array<double, 4> w{};
    for (std::size_t i = 0; i < 4; ++i) {
        w[i] = ideal[i] * model.retention_factor(i);
    }
    return PopulationVector::normalized(w);
}

DampingCorrection damping_correct(const PopulationVector &measured, const DampingModel &model,
                                  const ElementUncertainty &sigmas) {
    model.validate();
    std::array<double, 4> w{};
    std::array<double, 4> s{};
    double z = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double factor = model.retention_factor(i);
        w[i] = measured[i] / factor;
        s[i] = sigmas.sigmas[i] / factor;
        z += w[i];
    }
    if (!std::isfinite(z) || !(z > 0.0)) {
        throw ContractError("damping correction overflowed; retention factors too small");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        w[i] /= z;
        s[i] /= z;
        if (!std::isfinite(w[i]) || w[i] < -kProbabilityTolerance || w[i] > 1.0 + kProbabilityTolerance) {
            throw ContractError("damping correction produced an invalid population");
        }
        w[i] = std::clamp(w[i], 0.0, 1.0);
    }
    return {PopulationVector(w), ElementUncertainty{s}};
}

}  // namespace lgsim
