#include "lgsim/ensemble.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lgsim/errors.h"

namespace lgsim {

namespace {

void require_alpha(double alpha, const char *what) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        std::ostringstream os;
        os << what << ": Boltzmann ratio " << alpha << " outside (0, 1)";
        throw DomainError(os.str());
    }
}

}  // namespace

PopulationVector::PopulationVector(const std::array<double, 4> &p) : p_(p) {
    double sum = 0.0;
    for (double x : p_) {
        if (!(x >= 0.0 && x <= 1.0)) {
            std::ostringstream os;
            os << "population " << x << " outside [0, 1]";
            throw ContractError(os.str());
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "populations sum to " << sum << ", not 1";
        throw ContractError(os.str());
    }
}

PopulationVector PopulationVector::normalized(const std::array<double, 4> &weights) {
    double z = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ContractError("population weights must be finite and non-negative");
        }
        z += w;
    }
    if (!(z > 0.0)) {
        throw ContractError("population weights sum to zero");
    }
    std::array<double, 4> p{};
    for (std::size_t i = 0; i < 4; ++i) {
        p[i] = weights[i] / z;
    }
    return PopulationVector(p);
}

double boltzmann_alpha(const ThermalParameters &params) {
    if (!(params.field_tesla > 0.0)) {
        throw DomainError("magnetic field must be positive");
    }
    if (!(params.temperature_kelvin > 0.0)) {
        throw DomainError("temperature must be positive");
    }
    if (!(params.g_factor > 0.0)) {
        throw DomainError("g-factor must be positive");
    }
    const double zeeman = params.g_factor * kBohrMagneton * params.field_tesla;
    return std::exp(-zeeman / (kBoltzmann * params.temperature_kelvin));
}

PopulationVector thermal_populations(double alpha) {
    require_alpha(alpha, "thermal_populations");
    return PopulationVector::normalized({1.0, alpha, 1.0, alpha});
}

PopulationVector hyperpolarized_populations(double alpha) {
    require_alpha(alpha, "hyperpolarized_populations");
    const double a = 1.0, b = alpha, c = alpha, d = alpha * alpha;
    return PopulationVector::normalized({a, c, b, d});
}

PopulationVector anti_cnot_layout(const PopulationVector &p) {
    return PopulationVector({p.a(), p.d(), p.b(), p.c()});
}

PopulationVector reduced_equivalent(const PopulationVector &p) {
    return PopulationVector::normalized({p.a(), p.d(), p.b(), p.d()});
}

double venality(const PopulationVector &p, VenalityMode mode) {
    switch (mode) {
        case VenalityMode::raw:
            return (p.c() + p.d()) / (p.a() + p.b() + p.c() + p.d());
        case VenalityMode::reduced: {
            const double zr = p.a() + p.b() + 2.0 * p.d();
            return zr > 0.0 ? 2.0 * p.d() / zr : 0.0;
        }
    }
    throw ContractError("unknown venality mode");
}

double detuning_corrected_venality(const PopulationVector &p, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        std::ostringstream os;
        os << "detuning leakage " << delta << " outside [0, 1]";
        throw DomainError(os.str());
    }
    const double corrupt = 2.0 * p.d() + delta * p.c();
    const double z = p.a() + p.b() + corrupt;
    return z > 0.0 ? corrupt / z : 0.0;
}

Matrix4c pseudopure_reconstruct(const Matrix4c &rho_pp, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("pseudopure reconstruction needs alpha in [0, 1)");
    }
    if (std::abs(rho_pp.trace() - Complex(1.0, 0.0)) > kTraceTolerance) {
        throw ContractError("pseudopure matrix must have unit trace");
    }
    const double background = alpha / (2.0 * (1.0 + alpha));
    const double scale = (1.0 - alpha) / (1.0 + alpha);
    return background * Matrix4c::Identity() + scale * rho_pp;
}

TwoQubitState pseudopure_reconstruct(const TwoQubitState &rho_pp, double alpha) {
    return TwoQubitState::from_matrix(pseudopure_reconstruct(rho_pp.matrix(), alpha));
}

Matrix4c pseudopure_extract(const Matrix4c &rho_full, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("pseudopure extraction needs alpha in [0, 1)");
    }
    const double background = alpha / (2.0 * (1.0 + alpha));
    const double scale = (1.0 - alpha) / (1.0 + alpha);
    return (rho_full - background * Matrix4c::Identity()) / scale;
}

PopulationVector prepare_populations(const PreparationMode &mode, double alpha) {
    struct Visitor {
        double alpha;
        PopulationVector operator()(const ThermalPreparation &) const { return thermal_populations(alpha); }
        PopulationVector operator()(const HyperpolarizedPreparation &) const {
            return hyperpolarized_populations(alpha);
        }
        PopulationVector operator()(const CustomPreparation &c) const { return c.populations; }
    };
    return std::visit(Visitor{alpha}, mode);
}

}  // namespace lgsim
