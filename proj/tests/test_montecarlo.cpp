#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hnwsn/io.hpp"
#include "hnwsn/montecarlo.hpp"

using namespace hnwsn;

namespace {
const DeploymentModel kHalfNormal5{DeploymentKind::HalfPlaneHalfNormal, {5.0}, Region::half_plane()};
const Region kField = Region::rectangle(0, 100, -50, 50);

ExperimentConfig fig4_config(std::uint64_t trials)
{
    ExperimentConfig c;
    c.models = {DeploymentKind::HalfPlaneHalfNormal, DeploymentKind::UniformRect};
    c.sigma_values = {10};
    c.n_values = {10, 50, 100, 200, 500};
    c.s_values = {5};
    c.d_values = {5};
    c.r_values = {1};
    c.region = kField;
    c.trials = trials;
    c.master_seed = 77;
    return c;
}
}  // namespace

TEST(RunTrial, Basics)
{
    const auto sc = make_scenario(5, 3);
    EXPECT_FALSE(run_trial(kHalfNormal5, 0, sc, 1, 123));
    const DeploymentModel tiny{DeploymentKind::UniformRect, {}, Region::rectangle(0, 1, -1, 1)};
    for (std::uint64_t s = 0; s < 100; ++s) ASSERT_TRUE(run_trial(tiny, 1, make_scenario(1, 0.5), 5.0, s));
    for (std::uint64_t s = 0; s < 100; ++s)
        ASSERT_EQ(run_trial(kHalfNormal5, 10, sc, 1, s), run_trial(kHalfNormal5, 10, sc, 1, s));
}

TEST(EstimateDetection, AgreesWithAnalyticModel)
{
    const auto sc = make_scenario(5, 3);
    const auto est = estimate_detection(kHalfNormal5, 10, sc, 1, 1000000, RandomSeed{2718});
    const double pd = full_report(sc, 1, 5, 10).p_d;
    EXPECT_NEAR(est.p_hat, pd, 0.005);
    EXPECT_EQ(est.trials, 1000000u);
    EXPECT_EQ(est.master_seed, 2718u);
    EXPECT_DOUBLE_EQ(est.p_hat, static_cast<double>(est.detected_count) / 1e6);
    EXPECT_DOUBLE_EQ(est.ci_half_width, 1.96 * std::sqrt(est.p_hat * (1 - est.p_hat) / 1e6));
}

TEST(EstimateDetection, UniformSingleSensorMatchesAreaRatio)
{
    const DeploymentModel uniform{DeploymentKind::UniformRect, {}, kField};
    const auto sc = make_scenario(20, 3);
    const auto est = estimate_detection(uniform, 1, sc, 1, 2000000, RandomSeed{5});
    const double expected = capsule_area(3, 1) / kField.area();
    EXPECT_NEAR(est.p_hat, expected, 3 * est.ci_half_width);
}

TEST(EstimateDetection, SingleTrial)
{
    const auto est = estimate_detection(kHalfNormal5, 10, make_scenario(5, 3), 1, 1, RandomSeed{3});
    EXPECT_TRUE(est.p_hat == 0.0 || est.p_hat == 1.0);
    EXPECT_EQ(est.ci_half_width, 0.0);
    EXPECT_THROW(estimate_detection(kHalfNormal5, 10, make_scenario(5, 3), 1, 0, RandomSeed{3}), std::invalid_argument);
}

TEST(EstimateDetection, IndependentOfWorkerCount)
{
    const auto sc = make_scenario(8, 4);
    const auto one = estimate_detection(kHalfNormal5, 20, sc, 0.7, 50001, RandomSeed{11}, 1);
    for (unsigned w : {2u, 3u, 7u, 16u}) {
        const auto many = estimate_detection(kHalfNormal5, 20, sc, 0.7, 50001, RandomSeed{11}, w);
        EXPECT_EQ(one.detected_count, many.detected_count);
        EXPECT_EQ(one.p_hat, many.p_hat);
    }
}

TEST(EstimateDetection, UniformIndependentOfEntryPoint)
{
    const DeploymentModel uniform{DeploymentKind::UniformRect, {}, kField};
    const auto a = estimate_detection(uniform, 50, make_scenario(10, 3), 1, 200000, RandomSeed{1});
    const auto b = estimate_detection(uniform, 50, make_scenario(50, 3), 1, 200000, RandomSeed{2});
    EXPECT_LE(std::fabs(a.p_hat - b.p_hat), 3 * std::hypot(a.ci_half_width, b.ci_half_width));
}

TEST(EstimateDetection, FixedFieldIsConditional)
{
    const auto sc = make_scenario(5, 3);
    const auto e = estimate_detection_fixed_field(kHalfNormal5, 10, sc, 1, 500, RandomSeed{9});
    EXPECT_TRUE(e.p_hat == 0.0 || e.p_hat == 1.0);
    EXPECT_EQ(e.p_hat == 1.0, run_trial(kHalfNormal5, 10, sc, 1, derive_trial_seed(9, 0)));
}

TEST(Sweep, SinglePointMatchesDirectCalls)
{
    ExperimentConfig c;
    c.models = {DeploymentKind::HalfPlaneHalfNormal};
    c.sigma_values = {5};
    c.n_values = {10};
    c.s_values = {5};
    c.d_values = {3};
    c.r_values = {1};
    c.region = Region::rectangle(0, 200, -100, 100);
    c.trials = 20000;
    c.master_seed = 4;
    const auto result = sweep(c);
    ASSERT_EQ(result.rows.size(), 1u);
    const auto& row = result.rows[0];
    const auto est = estimate_detection({DeploymentKind::HalfPlaneHalfNormal, {5}, c.region}, 10, make_scenario(5, 3),
                                        1, 20000, RandomSeed{4});
    EXPECT_EQ(*row.p_hat, est.p_hat);
    EXPECT_EQ(*row.p_analytic, full_report(make_scenario(5, 3), 1, 5, 10).p_d);
    EXPECT_EQ(row.seed, 4u);
}

TEST(Sweep, Fig4HalfNormalDominatesNearTarget)
{
    const auto result = sweep(fig4_config(20000));
    ASSERT_EQ(result.rows.size(), 10u);
    std::vector<const SweepRow*> hn, un;
    for (const auto& row : result.rows) (row.model == DeploymentKind::UniformRect ? un : hn).push_back(&row);
    ASSERT_EQ(hn.size(), 5u);
    ASSERT_EQ(un.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(hn[i]->n, un[i]->n);
        EXPECT_GE(*hn[i]->p_hat, *un[i]->p_hat) << "N=" << hn[i]->n;
        if (i > 0) {
            for (const auto* curve : {&hn, &un}) {
                const auto* prev = (*curve)[i - 1];
                const auto* cur = (*curve)[i];
                EXPECT_GE(*cur->p_hat, *prev->p_hat - 2 * std::hypot(*cur->ci_half_width, *prev->ci_half_width));
            }
        }
    }
}

TEST(Sweep, RowsSortedByModelThenN)
{
    auto c = fig4_config(500);
    c.n_values = {200, 10, 50};
    c.models = {DeploymentKind::HalfPlaneHalfNormal, DeploymentKind::UniformRect, DeploymentKind::HalfPlaneHalfNormal};
    const auto result = sweep(c);
    ASSERT_EQ(result.rows.size(), 6u);
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const auto& a = result.rows[i - 1];
        const auto& b = result.rows[i];
        ASSERT_TRUE(a.model < b.model || (a.model == b.model && a.n <= b.n));
    }
    EXPECT_FALSE(result.rows.front().sigma.has_value());  // uniform ignores sigma
}

TEST(Sweep, InvalidCombinationsAreReportedPerRow)
{
    auto c = fig4_config(500);
    c.n_values = {10};
    c.s_values = {2, 8};
    c.d_values = {5};
    const auto result = sweep(c);
    ASSERT_EQ(result.rows.size(), 4u);
    EXPECT_EQ(result.valid_rows(), 2u);
    for (const auto& row : result.rows) {
        if (row.s < row.d) {
            EXPECT_FALSE(row.p_hat.has_value());
            EXPECT_NE(row.status.find("invalid"), std::string::npos);
        }
    }
}

TEST(Sweep, ConfigRejectsOutOfDomainValues)
{
    auto c = fig4_config(100);
    c.sigma_values = {0};
    EXPECT_THROW(sweep(c), std::invalid_argument);
    c = fig4_config(100);
    c.trials = 0;
    EXPECT_THROW(sweep(c), std::invalid_argument);
    c = fig4_config(100);
    c.n_values.clear();
    EXPECT_THROW(sweep(c), std::invalid_argument);
}

TEST(Sweep, ReplayIsByteIdentical)
{
    const auto c = fig4_config(3000);
    std::ostringstream a, b;
    write_sweep_csv(a, sweep(c, 1));
    write_sweep_csv(b, sweep(c, 4));
    EXPECT_EQ(a.str(), b.str());
}
