#include "lgsim/macrorealist.h"

#include <gtest/gtest.h>

#include <random>

#include "lgsim/errors.h"

using namespace lgsim;

namespace {

Trajectory traj(const char *label) {
    const auto spin = [](char c) { return c == 'u' ? Spin::up : Spin::down; };
    return {spin(label[0]), spin(label[1]), spin(label[2])};
}

// Brute-force pair marginal straight from the eight probabilities.
double marginal_by_hand(const TrajectoryDistribution &d, int ti, Spin si, int tj, Spin sj) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        const Trajectory t = Trajectory::from_index(i);
        const Spin s[3] = {t.s1, t.s2, t.s3};
        if (s[ti - 1] == si && s[tj - 1] == sj) sum += d.values()[i];
    }
    return sum;
}

}  // namespace

TEST(Trajectory, index_round_trip_and_labels) {
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        EXPECT_EQ(Trajectory::from_index(i).index(), i);
    }
    EXPECT_EQ(traj("udd").label(), "udd");
    EXPECT_EQ(traj("uuu").index(), 7u);
    EXPECT_EQ(traj("ddd").index(), 0u);
    EXPECT_THROW(Trajectory::from_index(8), ContractError);
}

TEST(trajectory_f, reference_rows) {
    EXPECT_EQ(trajectory_f(traj("uuu")), 4.0);
    EXPECT_EQ(trajectory_f(traj("udu")), 0.0);
    EXPECT_EQ(trajectory_f(traj("ddd")), 4.0);
}

TEST(trajectory_f, every_vertex_is_zero_or_four) {
    int fours = 0;
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        const double f = trajectory_f(Trajectory::from_index(i));
        EXPECT_TRUE(f == 0.0 || f == 4.0);
        fours += f == 4.0;
    }
    EXPECT_EQ(fours, 2);
}

TEST(trajectory_correlators, sign_product_is_positive) {
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        const CorrelatorSet k = trajectory_correlators(Trajectory::from_index(i));
        EXPECT_EQ(k.k12 * k.k23 * k.k13, 1.0);
    }
}

TEST(TrajectoryDistribution, validates) {
    EXPECT_THROW(TrajectoryDistribution({0.5, 0.5, 0.5, 0, 0, 0, 0, 0}), ContractError);
    EXPECT_THROW(TrajectoryDistribution({1.5, -0.5, 0, 0, 0, 0, 0, 0}), ContractError);
    EXPECT_NO_THROW(TrajectoryDistribution::uniform());
}

TEST(correlators_from_distribution, reference_distributions) {
    const CorrelatorSet u = correlators_from_distribution(TrajectoryDistribution::uniform());
    EXPECT_NEAR(u.k12, 0.0, 1e-15);
    EXPECT_NEAR(u.k23, 0.0, 1e-15);
    EXPECT_NEAR(u.k13, 0.0, 1e-15);
    EXPECT_NEAR(u.f(), 1.0, 1e-15);

    const CorrelatorSet all_up = correlators_from_distribution(TrajectoryDistribution::point_mass(traj("uuu")));
    EXPECT_EQ(all_up.f(), 4.0);

    const CorrelatorSet udd = correlators_from_distribution(TrajectoryDistribution::point_mass(traj("udd")));
    EXPECT_EQ(udd.k12, -1.0);
    EXPECT_EQ(udd.k23, 1.0);
    EXPECT_EQ(udd.k13, -1.0);
    EXPECT_EQ(udd.f(), 0.0);
}

TEST(correlators_from_distribution, pair_marginal_consistency) {
    std::mt19937_64 rng(20121113);
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {2, 3}, {1, 3}}};
    for (int trial = 0; trial < 1000; ++trial) {
        const TrajectoryDistribution d = TrajectoryDistribution::sample_uniform(rng);
        const CorrelatorSet k = correlators_from_distribution(d);
        const double ks[3] = {k.k12, k.k23, k.k13};
        for (std::size_t p = 0; p < 3; ++p) {
            const auto [ti, tj] = pairs[p];
            double k_from_marginals = 0.0;
            for (Spin si : {Spin::down, Spin::up}) {
                for (Spin sj : {Spin::down, Spin::up}) {
                    const double m = d.pair_marginal(ti, si, tj, sj);
                    EXPECT_NEAR(m, marginal_by_hand(d, ti, si, tj, sj), 1e-15);
                    k_from_marginals += q_value(si) * q_value(sj) * m;
                }
            }
            EXPECT_NEAR(ks[p], k_from_marginals, 1e-12);
        }
        EXPECT_GE(k.f(), -1e-12);
        EXPECT_LE(k.f(), 4.0 + 1e-12);
    }
}

TEST(polytope, extrema_by_vertex_scan) {
    const PolytopeExtremum lo = min_f_over_polytope();
    EXPECT_EQ(lo.value, 0.0);
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        if (lo.witness.values()[i] > 0) EXPECT_EQ(trajectory_f(Trajectory::from_index(i)), 0.0);
    }
    const PolytopeExtremum hi = max_f_over_polytope();
    EXPECT_EQ(hi.value, 4.0);
    EXPECT_EQ(correlators_from_distribution(hi.witness).f(), 4.0);
    EXPECT_EQ(min_g_over_polytope().value, -1.0);
}

TEST(polytope, random_samples_never_beat_minimum) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        EXPECT_GE(correlators_from_distribution(TrajectoryDistribution::sample_uniform(rng)).f(), -1e-12);
    }
}

TEST(corrupted_f_bound, reference_values) {
    EXPECT_NEAR(corrupted_f_bound({MacrorealistStance::moderate, 0.150}), 0.150, 1e-12);
    EXPECT_NEAR(corrupted_f_bound({MacrorealistStance::adversarial, 0.056}), -0.112, 1e-12);
    EXPECT_NEAR(corrupted_f_bound({MacrorealistStance::moderate, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(corrupted_f_bound({MacrorealistStance::adversarial, 0.0}), 0.0, 1e-15);
}

TEST(corrupted_f_bound, matches_closed_form_bounds) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double zeta = u(rng);
        EXPECT_NEAR(corrupted_f_bound({MacrorealistStance::moderate, zeta}) - zeta, 0.0, 1e-12);
        EXPECT_NEAR(corrupted_f_bound({MacrorealistStance::adversarial, zeta}) + 2 * zeta, 0.0, 1e-12);
    }
    EXPECT_THROW(corrupted_f_bound({MacrorealistStance::moderate, 1.5}), DomainError);
}

TEST(stationarity, counterexample_properties) {
    const StationarityCounterexample ce = stationarity_counterexample();
    const CorrelatorSet k = correlators_from_distribution(ce.distribution);
    EXPECT_GE(ce.f_original, 0.0);
    EXPECT_EQ(ce.f_original, k.f());
    EXPECT_EQ(ce.f_stationary_assumed, k.k12 + k.k13);
    EXPECT_LE(ce.f_stationary_assumed, -2.0 + 1e-12);
    EXPECT_NE(k.k12, k.k23);
}

TEST(stationarity, minimum_of_substituted_function) {
    EXPECT_EQ(min_stationary_f_over_polytope().value, -2.0);
    // Oracle: scan 2 K12 + K13 + 1 over vertices by hand.
    double best = INFINITY;
    for (std::size_t i = 0; i < kTrajectoryCount; ++i) {
        const Trajectory t = Trajectory::from_index(i);
        best = std::min(best, 2.0 * q_value(t.s1) * q_value(t.s2) + q_value(t.s1) * q_value(t.s3) + 1.0);
    }
    EXPECT_EQ(best, -2.0);
}
