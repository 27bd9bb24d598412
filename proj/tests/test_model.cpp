#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace seroinv;
using namespace seroinv::testing;

TEST(Model, SeropositivityUnderVaccination) {
    const ModelParams full{0.4, {0, 0, 0}, {1, 1, 1}};
    EXPECT_EQ(q_of(full), (std::array<double, 3>{1, 1, 1}));
    const ModelParams none{0.4, {0.3, 0.2, 0.1}, {0, 0, 0}};
    EXPECT_EQ(q_of(none), (std::array<double, 3>{0.3, 0.2, 0.1}));
    const ModelParams half{0.4, {0.5, 0, 0}, {0.5, 0, 0}};
    EXPECT_DOUBLE_EQ(q_of(half)[0], 0.75);
}

TEST(Model, ForwardDegenerateCases) {
    const auto unvaccinated = forward(ModelParams{0, {0, 0, 0}, {0.3, 0.7, 0.9}});
    EXPECT_EQ(unvaccinated[0], 1.0);
    for (int k = 1; k < kCells; ++k) EXPECT_EQ(unvaccinated[k], 0.0);

    const auto all_positive = forward(ModelParams{1, {0, 0, 0}, {1, 1, 1}});
    EXPECT_EQ(all_positive[7], 1.0);
    for (int k = 0; k < 7; ++k) EXPECT_EQ(all_positive[k], 0.0);
}

TEST(Model, ForwardReproducesRoundedEstimates) {
    const ModelParams ag1{0.227, {0.005, 0.019, 0.011}, {0.950, 0.861, 0.974}};
    const auto expected = expected_counts(ag1, 209.0);
    for (int k = 0; k < kCells; ++k) EXPECT_NEAR(expected[k], kCohortCounts[0][k], 0.3) << "cell " << k;
}

TEST(Model, ExpectedCountsUnderJointFit) {
    const auto expected = expected_counts(joint_fit_params(0), 209.0);
    for (int k = 0; k < kCells; ++k) EXPECT_NEAR(expected[k], kJointFitExpected[0][k], 0.1) << "cell " << k;

    for (double x : expected_counts(joint_fit_params(3), 0.0)) EXPECT_EQ(x, 0.0);
}

TEST(Model, ExpectedCountsFromExactEstimates) {
    const auto est = estimate(cohort_counts(1));
    const auto expected = expected_counts(est.params, 175.0);
    for (int k = 0; k < kCells; ++k) EXPECT_NEAR(expected[k], kCohortCounts[1][k], 1e-9) << "cell " << k;
}

TEST(ModelProperty, NormalisationIsExact) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> wide(-2.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        BasicModelParams<Exact> p{Exact(wide(rng)), {}, {}};
        for (int i = 0; i < 3; ++i) {
            p.e[i] = Exact(wide(rng));
            p.s[i] = Exact(wide(rng));
        }
        Exact total = 0;
        for (const auto& x : forward(p)) total += x;
        ASSERT_EQ(total, 1);

        ModelParams d{to_double(p.v), {}, {}};
        for (int i = 0; i < 3; ++i) {
            d.e[i] = to_double(p.e[i]);
            d.s[i] = to_double(p.s[i]);
        }
        double dt = 0.0;
        for (double x : forward(d)) dt += x;
        ASSERT_NEAR(dt, 1.0, 1e-12);
    }
}

TEST(ModelProperty, SwapSymmetry) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Exact v(unit(rng));
        std::array<Exact, 3> e, q;
        for (int i = 0; i < 3; ++i) {
            e[i] = Exact(unit(rng));
            q[i] = Exact(unit(rng));
        }
        ASSERT_EQ(forward_vq(v, e, q), forward_vq(Exact(1) - v, q, e));
    }
}

TEST(ModelProperty, MarginalPrevalenceMonotoneInCoverage) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_params(rng, 0.0, 1.0);
        for (int d = 1; d <= 3; ++d) {
            double prev = -1.0;
            for (int step = 0; step <= 20; ++step) {
                p.v = step / 20.0;
                const auto cells = forward(p);
                double marginal = 0.0;
                for (int k = 0; k < kCells; ++k) {
                    if (is_positive(k, d)) marginal += cells[k];
                }
                ASSERT_NEAR(marginal, marginal_prevalence(p, d), 1e-12);
                ASSERT_GE(marginal, prev - 1e-12);
                prev = marginal;
            }
        }
    }
}

TEST(Sampler, DegenerateDistributions) {
    const auto none = sample_cohort(ModelParams{0, {0, 0, 0}, {0.5, 0.5, 0.5}}, 50, 3);
    EXPECT_EQ(none, CountVector::from_integers(std::array<int, 8>{50, 0, 0, 0, 0, 0, 0, 0}));
    const auto all = sample_cohort(ModelParams{1, {0, 0, 0}, {1, 1, 1}}, 10, 99);
    EXPECT_EQ(all, CountVector::from_integers(std::array<int, 8>{0, 0, 0, 0, 0, 0, 0, 10}));
}

TEST(Sampler, RejectsOutOfRangeParameters) {
    try {
        (void)sample_cohort(ModelParams{1.2, {0, 0, 0}, {1, 1, 1}}, 10, 1);
        FAIL() << "expected ParameterOutOfRange";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParameterOutOfRange);
    }
    EXPECT_THROW((void)sample_cohort(ModelParams{0.5, {-0.1, 0, 0}, {1, 1, 1}}, 10, 1), Error);
}

TEST(Sampler, FrequenciesMatchForwardModel) {
    const ModelParams p{0.8, {0.3, 0.2, 0.1}, {0.9, 0.95, 0.85}};
    constexpr std::uint64_t n = 1'000'000;
    const auto sample = sample_cohort(p, n, 42);
    EXPECT_EQ(sample.total(), n);
    const auto probs = forward(p);
    for (int k = 0; k < kCells; ++k) {
        const double freq = to_double(sample[k]) / n;
        const double sd = std::sqrt(probs[k] * (1.0 - probs[k]) / n);
        EXPECT_LE(std::abs(freq - probs[k]), 3.0 * sd) << "cell " << k;
    }
}

TEST(Sampler, DeterministicPerSeed) {
    const ModelParams p{0.6, {0.2, 0.4, 0.1}, {0.9, 0.8, 0.7}};
    EXPECT_EQ(sample_cohort(p, 500, 5), sample_cohort(p, 500, 5));
    EXPECT_NE(sample_cohort(p, 500, 5), sample_cohort(p, 500, 6));
    // Pinned draw: guards the documented seed -> stream mapping.
    EXPECT_EQ(sample_cohort(p, 100, 2024), CountVector::from_integers(std::array<int, 8>{16, 6, 12, 4, 5, 3, 9, 45}));
}
