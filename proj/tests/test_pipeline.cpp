#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace seroinv;
using namespace seroinv::testing;

namespace {

const std::filesystem::path kData{SEROINV_TEST_DATA};

std::vector<ParamRecord> generic_params() { return load_params(kData / "sim_params.csv", DataFormat::Csv); }

}  // namespace

TEST(RunEstimate, SeroconversionAverages) {
    const auto report = run_estimate(cohort_dataset());
    EXPECT_FALSE(report.any_error());
    for (int i = 0; i < 3; ++i) {
        ASSERT_TRUE(report.mean_s[i]);
        EXPECT_NEAR(*report.mean_s[i], kReferenceMeanSeroconversion[i], 1e-3) << "s" << i + 1;
    }
}

TEST(RunEstimate, DegenerateRowIsLocal) {
    auto dataset = cohort_dataset();
    dataset.insert(dataset.begin() + 3, {"flat", CountVector::from_integers(std::array<int, 8>{1, 1, 1, 1, 1, 1, 1, 1})});
    const auto report = run_estimate(dataset);
    EXPECT_TRUE(report.any_error());
    ASSERT_TRUE(report.rows[3].error);
    EXPECT_EQ(report.rows[3].error->code, "DegenerateDiscriminant");
    EXPECT_EQ(report.rows[3].validity.level, ValidityLevel::Degenerate);
    const auto clean = run_estimate(cohort_dataset());
    for (int i = 0; i < 3; ++i) EXPECT_EQ(*report.mean_s[i], *clean.mean_s[i]);
    EXPECT_EQ(flatten(report.rows[4].params), flatten(clean.rows[3].params));
}

TEST(RunEstimate, OracleColumns) {
    EstimateOptions options;
    options.oracle = true;
    const std::vector<CohortRecord> data{{"AG1", cohort_counts(0)},
                                         {"empty", CountVector::from_integers(std::array<int, 8>{})}};
    const auto report = run_estimate(data, options);
    ASSERT_TRUE(report.rows[0].oracle);
    EXPECT_LE(max_abs_diff(flatten(report.rows[0].oracle->params), flatten(report.rows[0].params)), 1e-3);
    EXPECT_FALSE(report.rows[1].oracle);
    EXPECT_EQ(report.rows[1].error->code, "EmptyCohort");
}

TEST(RunValidate, LevelsWithoutErrors) {
    auto dataset = cohort_dataset();
    dataset.push_back({"empty", CountVector::from_integers(std::array<int, 8>{})});
    const auto rows = run_validate(dataset);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0].validity.level, ValidityLevel::FullyValid);
    EXPECT_EQ(rows[8].validity.level, ValidityLevel::CoverageOnly);
    EXPECT_EQ(rows[10].validity.level, ValidityLevel::Degenerate);
}

TEST(RunReconstruct, ClosedFormReproducesInput) {
    const auto rows = run_reconstruct(cohort_dataset());
    for (const auto& r : rows) {
        ASSERT_FALSE(r.error) << r.label;
        for (int k = 0; k < kCells; ++k) EXPECT_NEAR(r.expected[k], r.observed[k], 1e-6) << r.label << " a" << k;
    }
}

TEST(RunReconstruct, JointFitParameters) {
    const auto params = load_params(kData / "joint_fit_params.csv", DataFormat::Csv);
    const auto rows = run_reconstruct(cohort_dataset(), &params);
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t g = 0; g < 10; ++g) {
        ASSERT_FALSE(rows[g].error);
        for (int k = 0; k < kCells; ++k) {
            EXPECT_NEAR(rows[g].expected[k], kJointFitExpected[g][k], 1.0) << rows[g].label << " a" << k;
        }
    }
}

TEST(RunReconstruct, EmptyAndMissing) {
    const std::vector<CohortRecord> data{{"zero", CountVector::from_integers(std::array<int, 8>{})},
                                         {"AG1", cohort_counts(0)}};
    const auto rows = run_reconstruct(data);
    EXPECT_FALSE(rows[0].error);
    for (double x : rows[0].expected) EXPECT_EQ(x, 0.0);

    const std::vector<ParamRecord> other{{"AG2", joint_fit_params(1)}};
    const auto missing = run_reconstruct(data, &other);
    EXPECT_FALSE(missing[0].error);
    ASSERT_TRUE(missing[1].error);
    EXPECT_EQ(missing[1].error->code, "MissingParams");

    const auto flat = run_reconstruct({{"flat", CountVector::from_integers(std::array<int, 8>{1, 1, 1, 1, 1, 1, 1, 1})}});
    ASSERT_TRUE(flat[0].error);
    EXPECT_EQ(flat[0].error->code, "DegenerateDiscriminant");
}

TEST(RunSimulate, LargeCohortsRecoverCoverage) {
    SimulateOptions options;
    options.n = 100000;
    options.replicates = 100;
    options.seed = 7;
    const auto sim = run_simulate(generic_params(), options);
    ASSERT_EQ(sim.replicates.size(), 100u);
    ASSERT_EQ(sim.summaries.size(), 1u);
    const auto& sum = sim.summaries[0];
    EXPECT_NEAR(sum.mean[0], 0.8, 0.01);
    EXPECT_EQ(sum.error_fraction, 0.0);
    for (int c = 1; c < 7; ++c) EXPECT_NEAR(sum.mean[c], flatten(sum.truth)[c], 0.02) << "column " << c;
}

TEST(RunSimulate, SmallCohortsBreakDown) {
    SimulateOptions options;
    options.n = 10;
    options.replicates = 200;
    options.seed = 11;
    const auto sum = run_simulate(generic_params(), options).summaries[0];
    EXPECT_GT(sum.degenerate_fraction, 0.0);
    EXPECT_GE(sum.not_fully_valid_fraction, sum.degenerate_fraction);
}

TEST(RunSimulate, DeterministicAndSeeded) {
    SimulateOptions options;
    options.n = 500;
    options.replicates = 1;
    options.seed = 123;
    const auto a = run_simulate(generic_params(), options);
    const auto b = run_simulate(generic_params(), options);
    std::ostringstream ra, rb;
    render_simulation(ra, a, 6, true);
    render_simulation(rb, b, 6, true);
    EXPECT_EQ(ra.str(), rb.str());
    EXPECT_EQ(a.replicates[0].seed, 123u);
    EXPECT_EQ(a.replicates[0].cohort.counts, sample_cohort(generic_params()[0].params, 500, 123));

    options.replicates = 3;
    auto two = generic_params();
    two.push_back({"other", ModelParams{0.5, {0.1, 0.1, 0.1}, {0.9, 0.9, 0.9}}});
    const auto multi = run_simulate(two, options);
    for (std::size_t i = 0; i < multi.replicates.size(); ++i) EXPECT_EQ(multi.replicates[i].seed, 123u + i);
    EXPECT_EQ(multi.replicates[4].cohort.label, "other-r1");
}

TEST(RunSimulate, RejectsBadInput) {
    SimulateOptions options;
    options.n = 0;
    EXPECT_THROW(run_simulate(generic_params(), options), std::invalid_argument);
    options.n = 10;
    options.replicates = 0;
    EXPECT_THROW(run_simulate(generic_params(), options), std::invalid_argument);
    options.replicates = 1;
    const std::vector<ParamRecord> bad{{"bad", ModelParams{1.5, {0, 0, 0}, {1, 1, 1}}}};
    EXPECT_THROW(run_simulate(bad, options), Error);
}
