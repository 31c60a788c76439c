// Copyright 2026 The Boxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "boxsim/harness.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "boxsim/random.h"

namespace boxsim {
namespace {

TEST(ModelNameTest, RoundTripsAllModels) {
    for (Model m : {Model::preliminary, Model::epr2_nonlocal, Model::epr2_full, Model::singlet,
                    Model::oracle, Model::local_oracle, Model::broken}) {
        auto parsed = parse_model(model_name(m));
        ASSERT_TRUE(parsed.has_value()) << model_name(m);
        EXPECT_EQ(*parsed, m);
    }
    EXPECT_FALSE(parse_model("no-such-model").has_value());
    EXPECT_FALSE(parse_model("").has_value());
}

TEST(ModelTargetTest, PicksTheRightAnalyticPart) {
    StateParameter state(kPi / 6.0);
    BlochVector a = BlochVector::normalized(0.3, 0.2, 0.9);
    BlochVector b = BlochVector::normalized(-0.5, 0.1, 0.85);
    BinaryCorrelation quantum = quantum_correlation(state, a, b);
    Epr2Decomposition dec = epr2_decompose(state, a, b);

    BinaryCorrelation full = model_target(Model::epr2_full, state, a, b);
    EXPECT_DOUBLE_EQ(full.correlator, quantum.correlator);
    BinaryCorrelation nl = model_target(Model::epr2_nonlocal, state, a, b);
    EXPECT_DOUBLE_EQ(nl.alice_marginal, dec.nonlocal_part.alice_marginal);
    EXPECT_DOUBLE_EQ(nl.correlator, dec.nonlocal_part.correlator);
    BinaryCorrelation local = model_target(Model::local_oracle, state, a, b);
    EXPECT_DOUBLE_EQ(local.correlator, dec.local_part.correlator);

    // singlet ignores the supplied state and pins theta = pi/4.
    BinaryCorrelation singlet = model_target(Model::singlet, state, a, b);
    StateParameter max(kPi / 4.0);
    EXPECT_DOUBLE_EQ(singlet.correlator, quantum_correlation(max, a, b).correlator);
}

TEST(CellIndexTest, FixedColumnOrder) {
    EXPECT_EQ(cell_index(+1, +1), 0);
    EXPECT_EQ(cell_index(+1, -1), 1);
    EXPECT_EQ(cell_index(-1, +1), 2);
    EXPECT_EQ(cell_index(-1, -1), 3);
}

TEST(EstimatedDistributionTest, DerivedStatistics) {
    EstimatedDistribution est;
    est.counts = {600, 100, 200, 100};
    est.n = 1000;
    est.nonlocal_rounds = 250;
    EXPECT_DOUBLE_EQ(est.p_hat(0), 0.6);
    EXPECT_DOUBLE_EQ(est.alice_marginal(), 0.6 + 0.1 - 0.2 - 0.1);
    EXPECT_DOUBLE_EQ(est.bob_marginal(), 0.6 - 0.1 + 0.2 - 0.1);
    EXPECT_DOUBLE_EQ(est.correlator(), 0.6 - 0.1 - 0.2 + 0.1);
    EXPECT_DOUBLE_EQ(est.nonlocal_freq(), 0.25);
    EXPECT_NEAR(est.standard_error(0), std::sqrt(0.6 * 0.4 / 1000.0), 1e-15);
}

TEST(EstimateTest, RejectsZeroRounds) {
    StateParameter state(kPi / 6.0);
    EXPECT_THROW(estimate(Model::epr2_full, state, kZAxis, kZAxis, 0, 1), std::invalid_argument);
}

TEST(EstimateTest, DeterministicForFixedSeed) {
    StateParameter state(kPi / 8.0);
    BlochVector a = BlochVector::normalized(0.2, 0.5, 0.9);
    BlochVector b = BlochVector::normalized(0.4, -0.1, 0.7);
    EstimatedDistribution e1 = estimate(Model::epr2_full, state, a, b, 70000, 33);
    EstimatedDistribution e2 = estimate(Model::epr2_full, state, a, b, 70000, 33);
    EXPECT_EQ(e1.counts, e2.counts);
    EXPECT_EQ(e1.nonlocal_rounds, e2.nonlocal_rounds);
    EXPECT_EQ(e1.n, 70000u);

    EstimatedDistribution e3 = estimate(Model::epr2_full, state, a, b, 70000, 34);
    EXPECT_NE(e1.counts, e3.counts);
}

TEST(EstimateTest, CountsAreIndependentOfWorkerCount) {
    StateParameter state(kPi / 8.0);
    BlochVector a = kZAxis;
    BlochVector b = BlochVector::normalized(1.0, 0.0, 1.0);
    // A non-multiple of the chunk size, spanning several chunks.
    const std::uint64_t n = 3 * kChunkRounds + 12345;
    EstimatedDistribution serial = estimate_with_workers(Model::epr2_full, state, a, b, n, 7, 1);
    EstimatedDistribution pooled = estimate_with_workers(Model::epr2_full, state, a, b, n, 7, 3);
    EstimatedDistribution defaulted = estimate(Model::epr2_full, state, a, b, n, 7);
    EXPECT_EQ(serial.counts, pooled.counts);
    EXPECT_EQ(serial.counts, defaulted.counts);
    EXPECT_EQ(serial.nonlocal_rounds, pooled.nonlocal_rounds);
    EXPECT_EQ(serial.n, n);
}

TEST(EstimateTest, OracleModelReproducesItsTarget) {
    // theta = pi/4, orthogonal settings: the target is uniform.
    StateParameter state(kPi / 4.0);
    EstimatedDistribution est = estimate(Model::oracle, state, kZAxis, kXAxis, 1000000, 5);
    for (int cell = 0; cell < 4; cell++) {
        EXPECT_NEAR(est.p_hat(cell), 0.25, 0.0022);  // 5 sigma at n = 1e6
    }
}

TEST(CompareTest, PassesSelfConsistentEstimate) {
    StateParameter state(kPi / 6.0);
    BlochVector a = BlochVector::normalized(0.3, 0.3, 0.9);
    BlochVector b = BlochVector::normalized(0.1, -0.6, 0.8);
    BinaryCorrelation target = quantum_correlation(state, a, b);
    EstimatedDistribution est = estimate(Model::oracle, state, a, b, 200000, 6);
    TestReport report = compare(est, target);
    EXPECT_TRUE(report.pass);
    EXPECT_LE(report.worst_z, 5.0);
    EXPECT_DOUBLE_EQ(report.target.correlator, target.correlator);
}

TEST(CompareTest, FlagsAClearDiscrepancy) {
    // p_hat(+,-) = 0.01 against a target cell of exactly zero: z = 100.
    EstimatedDistribution est;
    est.counts = {740000, 10000, 0, 250000};
    est.n = 1000000;
    TestReport report = compare(est, BinaryCorrelation{0.5, 0.5, 1.0});
    EXPECT_FALSE(report.pass);
    EXPECT_GT(report.worst_z, 5.0);
}

TEST(CompareTest, EmptyCellWithZeroTargetHasZeroZ) {
    EstimatedDistribution est;
    est.counts = {1000, 0, 0, 0};
    est.n = 1000;
    TestReport report = compare(est, BinaryCorrelation{1.0, 1.0, 1.0});
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.worst_z, 0.0);
}

TEST(CompareTest, AbsoluteFloorForgivesTinyDeviations) {
    // 30 stray counts against a zero-probability target cell: z ~ 5.5 but the
    // absolute deviation 3e-5 sits far below the floor, so the cell passes.
    EstimatedDistribution est;
    est.counts = {999970, 30, 0, 0};
    est.n = 1000000;
    TestReport report = compare(est, BinaryCorrelation{1.0, 1.0, 1.0});
    EXPECT_TRUE(report.pass);
    EXPECT_GT(report.worst_z, 5.0);  // the floor, not the z, is what saves it
}

TEST(NoSignalingTest, RequiresTwoSettings) {
    StateParameter state(kPi / 6.0);
    EXPECT_THROW(
        no_signaling_test(Model::epr2_full, state, Side::alice, kZAxis, {kZAxis}, 1000, 1),
        std::invalid_argument);
}

TEST(NoSignalingTest, PassesForTheMainModelBothSides) {
    StateParameter state(kPi / 6.0);
    std::vector<BlochVector> varied = {kZAxis, kXAxis, BlochVector::normalized(1.0, 1.0, 1.0)};
    BlochVector fixed = BlochVector::normalized(0.6, 0.0, 0.8);
    TestReport alice = no_signaling_test(Model::epr2_full, state, Side::alice, fixed, varied,
                                         100000, 21);
    EXPECT_TRUE(alice.pass);
    EXPECT_LE(alice.worst_z, 5.0);
    TestReport bob = no_signaling_test(Model::epr2_full, state, Side::bob, fixed, varied,
                                       100000, 22);
    EXPECT_TRUE(bob.pass);
}

TEST(NoSignalingTest, CatchesThePlantedLeak) {
    StateParameter state(kPi / 6.0);
    // F(1) ~ 0.42 vs F(0) = 0: the leak shifts Alice's marginal by ~0.2.
    std::vector<BlochVector> varied = {kZAxis, kXAxis};
    BlochVector fixed = BlochVector::normalized(0.6, 0.0, 0.8);
    TestReport report = no_signaling_test(Model::broken, state, Side::alice, fixed, varied,
                                          100000, 23);
    EXPECT_FALSE(report.pass);
    EXPECT_GT(report.worst_z, 5.0);
}

TEST(ChshTest, RejectsTinySampleCounts) {
    StateParameter state(kPi / 4.0);
    EXPECT_THROW(chsh(Model::singlet, state, chsh_optimal_settings(), 3, 1),
                 std::invalid_argument);
}

TEST(ChshTest, EqualSettingsStayWithinTheTrivialBound) {
    // All four pairs equal: S = 2 E(a, b), which cannot exceed 2.
    StateParameter state(kPi / 6.0);
    ChshSettings settings{kZAxis, kZAxis, kZAxis, kZAxis};
    ChshEstimate est = chsh(Model::epr2_full, state, settings, 400000, 31);
    double expected = 2.0 * quantum_correlation(state, kZAxis, kZAxis).correlator;
    EXPECT_NEAR(est.value, expected, 5.0 * est.std_error + 1e-9);
    EXPECT_LE(est.value, 2.0 + 5.0 * est.std_error);
    EXPECT_DOUBLE_EQ(chsh_target(Model::epr2_full, state, settings), expected);
}

TEST(ChshTest, LocalPartStaysFarBelowTsirelson) {
    // The local product part alone has S = 0 at the optimal settings when
    // theta = pi/4 (all its fields vanish).
    StateParameter state(kPi / 4.0);
    ChshEstimate est = chsh(Model::local_oracle, state, chsh_optimal_settings(), 400000, 32);
    EXPECT_NEAR(est.value, 0.0, 5.0 * est.std_error + 1e-9);
    EXPECT_DOUBLE_EQ(chsh_target(Model::local_oracle, state, chsh_optimal_settings()), 0.0);
}

TEST(ChshTest, PartialStateMatchesAnalyticTarget) {
    StateParameter state(kPi / 8.0);
    ChshSettings settings = chsh_optimal_settings();
    double target = chsh_target(Model::epr2_full, state, settings);
    // Analytic: E(a, b) = a_z b_z + s (a_x b_x - a_y b_y) summed per CHSH.
    double s = state.sin2theta();
    double expected = (1.0 + s) * std::sqrt(2.0);
    EXPECT_NEAR(target, expected, 1e-12);
    ChshEstimate est = chsh(Model::epr2_full, state, settings, 400000, 33);
    EXPECT_NEAR(est.value, target, 5.0 * est.std_error);
}

TEST(SweepTest, RowLayoutAndDeterminism) {
    SweepOptions options;
    options.model = Model::oracle;
    options.theta_grid = {kPi / 8.0};
    options.random_pairs = 2;
    options.include_anchors = true;
    options.samples = 20000;
    options.seed = 99;
    std::vector<SweepRow> rows = sweep(options);
    ASSERT_EQ(rows.size(), anchor_pairs().size() + 2);
    std::uint64_t prev_seed = 0;
    for (size_t i = 0; i < rows.size(); i++) {
        const SweepRow &row = rows[i];
        EXPECT_EQ(row.model, Model::oracle);
        EXPECT_DOUBLE_EQ(row.theta, kPi / 8.0);
        EXPECT_EQ(row.n, 20000u);
        EXPECT_TRUE(row.pass) << "row " << i;
        double p_sum = row.p_hat[0] + row.p_hat[1] + row.p_hat[2] + row.p_hat[3];
        double q_sum = row.q[0] + row.q[1] + row.q[2] + row.q[3];
        EXPECT_NEAR(p_sum, 1.0, 1e-12);
        EXPECT_NEAR(q_sum, 1.0, 1e-12);
        EXPECT_EQ(row.seed, child_seed(99, 1 + i));
        if (i > 0) {
            EXPECT_NE(row.seed, prev_seed);
        }
        prev_seed = row.seed;
    }
    // Anchors come first and are reproduced verbatim.
    std::vector<SettingsPair> anchors = anchor_pairs();
    for (size_t i = 0; i < anchors.size(); i++) {
        EXPECT_EQ(rows[i].a, anchors[i].a);
        EXPECT_EQ(rows[i].b, anchors[i].b);
    }

    std::vector<SweepRow> again = sweep(options);
    ASSERT_EQ(again.size(), rows.size());
    for (size_t i = 0; i < rows.size(); i++) {
        EXPECT_EQ(again[i].p_hat, rows[i].p_hat);
        EXPECT_EQ(again[i].a, rows[i].a);
    }
}

TEST(SweepTest, ExplicitPairsAreUsedVerbatim) {
    SweepOptions options;
    options.model = Model::oracle;
    options.theta_grid = {kPi / 16.0, kPi / 8.0};
    options.explicit_pairs = {{kZAxis, kZAxis}, {kXAxis, kYAxis}};
    options.samples = 10000;
    std::vector<SweepRow> rows = sweep(options);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].a, kZAxis);
    EXPECT_EQ(rows[1].a, kXAxis);
    EXPECT_EQ(rows[1].b, kYAxis);
    EXPECT_DOUBLE_EQ(rows[0].theta, kPi / 16.0);
    EXPECT_DOUBLE_EQ(rows[2].theta, kPi / 8.0);
}

TEST(SweepTest, SingletForcesMaximalTheta) {
    SweepOptions options;
    options.model = Model::singlet;
    options.theta_grid = {kPi / 16.0};
    options.explicit_pairs = {{kZAxis, kZAxis}};
    options.samples = 10000;
    std::vector<SweepRow> rows = sweep(options);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(rows[0].theta, kPi / 4.0);
    EXPECT_TRUE(rows[0].pass);
}

TEST(SweepTest, RejectsDegenerateOptions) {
    SweepOptions no_settings;
    no_settings.random_pairs = 0;
    no_settings.include_anchors = false;
    EXPECT_THROW(sweep(no_settings), std::invalid_argument);

    SweepOptions no_samples;
    no_samples.samples = 0;
    EXPECT_THROW(sweep(no_samples), std::invalid_argument);

    SweepOptions bad_theta;
    bad_theta.theta_grid = {2.0};
    EXPECT_THROW(sweep(bad_theta), std::invalid_argument);
}

TEST(DefaultGridTest, FourThetasEndingAtMaximal) {
    std::vector<double> grid = default_theta_grid();
    ASSERT_EQ(grid.size(), 4u);
    EXPECT_DOUBLE_EQ(grid[0], kPi / 16.0);
    EXPECT_DOUBLE_EQ(grid[3], kPi / 4.0);
    std::vector<SettingsPair> anchors = anchor_pairs();
    EXPECT_EQ(anchors.size(), 8u);
    for (const SettingsPair &p : anchors) {
        EXPECT_NEAR(p.a.norm(), 1.0, 1e-12);
        EXPECT_NEAR(p.b.norm(), 1.0, 1e-12);
    }
}

}  // namespace
}  // namespace boxsim
