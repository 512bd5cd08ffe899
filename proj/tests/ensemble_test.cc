#include "lgsim/ensemble.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lgsim/errors.h"

using namespace lgsim;

namespace {

constexpr double kField = 3.357;

double alpha_at(double temperature) { return boltzmann_alpha({kField, temperature, kSiPElectronG}); }

void expect_normalized(const PopulationVector &p) {
    double sum = 0.0;
    for (double x : p.values()) {
        EXPECT_GE(x, 0.0);
        sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

}  // namespace

TEST(boltzmann_alpha, matches_direct_exponential) {
    // Independent evaluation: the Zeeman splitting in kelvin is g mu_B B / k_B.
    const double splitting_kelvin = 1.9987 * 9.2740100783e-24 * kField / 1.380649e-23;
    EXPECT_NEAR(alpha_at(2.6), std::exp(-splitting_kelvin / 2.6), 1e-15);
    EXPECT_NEAR(alpha_at(2.6), 0.1767, 5e-4);
}

TEST(boltzmann_alpha, limits) {
    EXPECT_GT(boltzmann_alpha({1e-9, 2.6, kSiPElectronG}), 0.999999);
    EXPECT_LT(boltzmann_alpha({kField, 1e-3, kSiPElectronG}), 1e-300);
}

TEST(boltzmann_alpha, rejects_non_positive_inputs) {
    EXPECT_THROW(boltzmann_alpha({0.0, 2.6, 2.0}), DomainError);
    EXPECT_THROW(boltzmann_alpha({1.0, -1.0, 2.0}), DomainError);
    EXPECT_THROW(boltzmann_alpha({1.0, 2.6, 0.0}), DomainError);
}

TEST(PopulationVector, validates) {
    EXPECT_NO_THROW(PopulationVector({0.25, 0.25, 0.25, 0.25}));
    EXPECT_THROW(PopulationVector({0.5, 0.5, 0.5, 0.0}), ContractError);
    EXPECT_THROW(PopulationVector({1.1, -0.1, 0.0, 0.0}), ContractError);
    EXPECT_THROW(PopulationVector::normalized({0.0, 0.0, 0.0, 0.0}), ContractError);
    EXPECT_THROW(PopulationVector::normalized({1.0, -1e-3, 0.0, 0.0}), ContractError);
}

TEST(PopulationVector, abcd_labels_map_onto_basis) {
    const PopulationVector p({0.4, 0.1, 0.3, 0.2});
    EXPECT_EQ(p.a(), p.p_dd());
    EXPECT_EQ(p.c(), p.p_du());
    EXPECT_EQ(p.b(), p.p_ud());
    EXPECT_EQ(p.d(), p.p_uu());
}

TEST(thermal_populations, venality_at_2p6_kelvin) {
    const PopulationVector p = thermal_populations(alpha_at(2.6));
    EXPECT_NEAR(p.p_du() + p.p_uu(), 0.150, 1e-3);
    EXPECT_NEAR(venality(p, VenalityMode::raw), 0.150, 1e-3);
}

TEST(thermal_populations, limits) {
    const PopulationVector cold = thermal_populations(0.0);
    EXPECT_EQ(cold, PopulationVector({0.5, 0.0, 0.5, 0.0}));
    const PopulationVector hot = thermal_populations(1.0);
    for (double x : hot.values()) EXPECT_NEAR(x, 0.25, 1e-15);
    EXPECT_THROW(thermal_populations(1.5), DomainError);
    EXPECT_THROW(thermal_populations(-0.1), DomainError);
}

TEST(hyperpolarized_populations, venality_at_2p7_kelvin) {
    const double alpha = alpha_at(2.7);
    EXPECT_NEAR(alpha, 0.1884, 5e-4);
    const PopulationVector p = hyperpolarized_populations(alpha);
    EXPECT_NEAR(venality(p, VenalityMode::reduced), 0.056, 1e-3);
    EXPECT_NEAR(venality(p, VenalityMode::reduced), 2 * alpha * alpha / (1 + alpha + 2 * alpha * alpha), 1e-15);
}

TEST(hyperpolarized_populations, alpha_half_gives_quarter) {
    EXPECT_NEAR(venality(hyperpolarized_populations(0.5), VenalityMode::reduced), 0.25, 1e-15);
}

TEST(hyperpolarized_populations, zero_alpha_is_pure_dd) {
    EXPECT_EQ(hyperpolarized_populations(0.0), PopulationVector({1.0, 0.0, 0.0, 0.0}));
}

TEST(reduced_equivalent, has_expected_pattern) {
    const double alpha = 0.3;
    const PopulationVector r = reduced_equivalent(hyperpolarized_populations(alpha));
    const double zr = 1 + alpha + 2 * alpha * alpha;
    EXPECT_NEAR(r.p_dd(), 1 / zr, 1e-15);
    EXPECT_NEAR(r.p_du(), alpha * alpha / zr, 1e-15);
    EXPECT_NEAR(r.p_ud(), alpha / zr, 1e-15);
    EXPECT_NEAR(r.p_uu(), alpha * alpha / zr, 1e-15);
    // The raw venality of the reduced equivalent is the reduced venality of the original.
    EXPECT_NEAR(venality(r, VenalityMode::raw), venality(hyperpolarized_populations(alpha), VenalityMode::reduced),
                1e-15);
}

TEST(anti_cnot_layout, swaps_inactive_and_corrupt_slots) {
    const PopulationVector p({0.4, 0.1, 0.3, 0.2});
    EXPECT_EQ(anti_cnot_layout(p), PopulationVector({0.4, 0.2, 0.3, 0.1}));
    EXPECT_EQ(anti_cnot_layout(anti_cnot_layout(p)), p);
}

TEST(venality, perfect_ancilla_is_zero) {
    const PopulationVector p({1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(venality(p, VenalityMode::raw), 0.0);
    EXPECT_EQ(venality(p, VenalityMode::reduced), 0.0);
}

TEST(venality, thermal_identity_holds_for_all_alpha) {
    for (int i = 1; i < 200; ++i) {
        const double alpha = i / 200.0;
        EXPECT_NEAR(venality(thermal_populations(alpha), VenalityMode::raw), alpha / (1 + alpha), 1e-15);
    }
}

TEST(venality, hyperpolarization_strictly_reduces_venality) {
    for (int i = 1; i < 200; ++i) {
        const double alpha = i / 200.0;
        EXPECT_LT(venality(hyperpolarized_populations(alpha), VenalityMode::reduced),
                  venality(thermal_populations(alpha), VenalityMode::raw))
            << "alpha = " << alpha;
    }
}

TEST(detuning_corrected_venality, zero_delta_is_reduced_venality) {
    const PopulationVector p = hyperpolarized_populations(0.2);
    EXPECT_EQ(detuning_corrected_venality(p, 0.0), venality(p, VenalityMode::reduced));
}

TEST(detuning_corrected_venality, small_leak_at_2p7_kelvin) {
    const PopulationVector p = hyperpolarized_populations(alpha_at(2.7));
    const double zeta = venality(p, VenalityMode::reduced);
    const double zeta_leak = detuning_corrected_venality(p, 0.04);
    const double zr = p.a() + p.b() + 2 * p.d();
    EXPECT_GT(zeta_leak, zeta);
    EXPECT_LE(zeta_leak - zeta, 0.04 * p.c() / zr);
}

TEST(detuning_corrected_venality, no_inactive_population_is_unchanged) {
    const PopulationVector p({0.5, 0.0, 0.3, 0.2});
    for (double delta : {0.0, 0.3, 1.0}) {
        EXPECT_NEAR(detuning_corrected_venality(p, delta), venality(p, VenalityMode::reduced), 1e-15);
    }
}

TEST(detuning_corrected_venality, monotone_in_delta) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const PopulationVector p = PopulationVector::normalized({u(rng), u(rng), u(rng), u(rng)});
        double previous = detuning_corrected_venality(p, 0.0);
        for (int k = 1; k <= 20; ++k) {
            const double next = detuning_corrected_venality(p, k / 20.0);
            EXPECT_GE(next, previous);
            previous = next;
        }
    }
}

TEST(detuning_corrected_venality, rejects_out_of_range_delta) {
    const PopulationVector p = thermal_populations(0.2);
    EXPECT_THROW(detuning_corrected_venality(p, -0.01), DomainError);
    EXPECT_THROW(detuning_corrected_venality(p, 1.01), DomainError);
}

TEST(pseudopure_reconstruct, coefficients_at_thermal_alpha) {
    const double alpha = 0.1767;
    Matrix4c pp = Matrix4c::Zero();
    pp(0, 0) = 1.0;
    const Matrix4c full = pseudopure_reconstruct(pp, alpha);
    const double background = alpha / (2 * (1 + alpha));
    const double weight = (1 - alpha) / (1 + alpha);
    EXPECT_NEAR(full(0, 0).real(), background + weight, 1e-15);
    EXPECT_NEAR(full(0, 0).real(), 0.7748, 1e-4);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(full(i, i).real(), 0.0751, 1e-4);
    EXPECT_NEAR(full.trace().real(), 1.0, 1e-15);
}

TEST(pseudopure_reconstruct, limits_and_fixed_point) {
    Matrix4c pp = Matrix4c::Zero();
    pp(1, 1) = 0.3;
    pp(2, 2) = 0.7;
    pp(1, 2) = Complex(0.1, 0.2);
    pp(2, 1) = Complex(0.1, -0.2);
    EXPECT_TRUE(pseudopure_reconstruct(pp, 0.0).isApprox(pp, 1e-15));
    const Matrix4c mixed = Matrix4c::Identity() / 4.0;
    EXPECT_TRUE(pseudopure_reconstruct(mixed, 0.6).isApprox(mixed, 1e-15));
}

TEST(pseudopure_reconstruct, preserves_trace_hermiticity_and_diagonality) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const TwoQubitState s = TwoQubitState::diagonal(PopulationVector::normalized({u(rng), u(rng), u(rng), u(rng)}));
        const double alpha = 0.99 * u(rng);
        const TwoQubitState full = pseudopure_reconstruct(s, alpha);
        EXPECT_NEAR(full.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_TRUE(full.matrix().isApprox(full.matrix().adjoint(), 1e-15));
        EXPECT_TRUE(full.is_diagonal());
    }
}

TEST(pseudopure_reconstruct, extract_inverts) {
    Matrix4c pp = Matrix4c::Zero();
    pp.diagonal() << 0.6, 0.1, 0.2, 0.1;
    pp(0, 2) = Complex(0.05, -0.02);
    pp(2, 0) = std::conj(pp(0, 2));
    EXPECT_TRUE(pseudopure_extract(pseudopure_reconstruct(pp, 0.37), 0.37).isApprox(pp, 1e-14));
}

TEST(pseudopure_reconstruct, rejects_bad_inputs) {
    const Matrix4c twice = 2.0 * Matrix4c::Identity() / 4.0;
    EXPECT_THROW(pseudopure_reconstruct(twice, 0.2), ContractError);
    const Matrix4c mixed = Matrix4c::Identity() / 4.0;
    EXPECT_THROW(pseudopure_reconstruct(mixed, 1.0), DomainError);
    EXPECT_THROW(pseudopure_reconstruct(mixed, -0.1), DomainError);
}

TEST(prepare_populations, dispatches_on_mode) {
    const double alpha = 0.2;
    EXPECT_EQ(prepare_populations(ThermalPreparation{}, alpha), thermal_populations(alpha));
    EXPECT_EQ(prepare_populations(HyperpolarizedPreparation{}, alpha), hyperpolarized_populations(alpha));
    const PopulationVector custom({0.7, 0.1, 0.1, 0.1});
    EXPECT_EQ(prepare_populations(CustomPreparation{custom}, alpha), custom);
}

TEST(builders, always_normalized) {
    for (int i = 0; i <= 100; ++i) {
        const double alpha = i / 100.0;
        expect_normalized(thermal_populations(alpha));
        expect_normalized(hyperpolarized_populations(alpha));
        expect_normalized(reduced_equivalent(hyperpolarized_populations(alpha)));
    }
}
