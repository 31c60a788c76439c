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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "boxsim/bloch.h"
#include "boxsim/correlation.h"
#include "boxsim/core.h"
#include "boxsim/version.h"

namespace boxsim {

enum class Model {
    preliminary,
    epr2_nonlocal,
    epr2_full,
    singlet,
    oracle,         // inverse-CDF sampler of the analytic target (reference)
    local_oracle,   // fixture: samples only the decomposition's local product part
    broken,         // fixture: epr2_nonlocal with a planted signaling leak
};

std::string_view model_name(Model model);
std::optional<Model> parse_model(std::string_view name);

/// The analytic joint distribution a model is supposed to reproduce.
/// singlet pins theta to pi/4; epr2_nonlocal targets the nonlocal part;
/// local_oracle targets the local product part; everything else targets
/// the quantum correlation.
BinaryCorrelation model_target(Model model,
                               const StateParameter &state,
                               const BlochVector &a,
                               const BlochVector &b);

/// Outcome-pair cell under the fixed column order ++, +-, -+, --.
int cell_index(int alpha, int beta);

struct EstimatedDistribution {
    std::array<std::uint64_t, 4> counts{};  // ++, +-, -+, --
    std::uint64_t n = 0;
    std::uint64_t nonlocal_rounds = 0;

    double p_hat(int cell) const;
    double standard_error(int cell) const;  // binomial, sqrt(p(1-p)/n)
    double alice_marginal() const;
    double bob_marginal() const;
    double correlator() const;
    double nonlocal_freq() const;
};

/// Monte Carlo estimate of a model's joint distribution over n rounds.
///
/// Deterministic for fixed (model, inputs, n, seed) independent of worker
/// count: rounds are split into fixed chunks of kChunkRounds, chunk j runs
/// on its own stream seeded child_seed(seed, j), and counts merge by
/// addition. The state argument is ignored by the singlet model.
EstimatedDistribution estimate(Model model,
                               const StateParameter &state,
                               const BlochVector &a,
                               const BlochVector &b,
                               std::uint64_t n,
                               std::uint64_t seed);

/// As estimate(), with an explicit worker count (0 = pick from hardware).
/// Exposed so the worker-count independence of the counts is testable.
EstimatedDistribution estimate_with_workers(Model model,
                                            const StateParameter &state,
                                            const BlochVector &a,
                                            const BlochVector &b,
                                            std::uint64_t n,
                                            std::uint64_t seed,
                                            unsigned workers);

struct TestReport {
    BinaryCorrelation target;
    double worst_z = 0.0;
    bool pass = false;
};

/// Per-cell two-sided z-test of an estimate against an analytic target.
/// A cell passes when its z is within z_max or its absolute deviation is
/// within abs_floor; an empty cell with target probability 0 has z = 0 by
/// convention. worst_z is the largest finite-or-infinite cell z.
TestReport compare(const EstimatedDistribution &est,
                   const BinaryCorrelation &target,
                   double z_max = 5.0,
                   double abs_floor = 0.005);

/// Tests that the fixed party's outcomes ignore the partner's setting.
/// Runs n rounds per varied partner setting, all on identical streams.
/// Statistical half: pairwise pooled two-proportion z on the fixed party's
/// marginal, worst pair reported. Exact half (fixed_side == alice only):
/// Alice's outcome sequence must be bit-identical across all runs; any
/// mismatch fails the report regardless of z. Requires >= 2 varied settings.
TestReport no_signaling_test(Model model,
                             const StateParameter &state,
                             Side fixed_side,
                             const BlochVector &fixed_setting,
                             const std::vector<BlochVector> &varied_settings,
                             std::uint64_t n,
                             std::uint64_t seed);

struct ChshSettings {
    BlochVector a0, a1, b0, b1;
};

/// a0 = z, a1 = x, b0 = (1,0,1)/sqrt(2), b1 = (-1,0,1)/sqrt(2): the settings
/// that reach S = 2*sqrt(2) on the maximally entangled state.
ChshSettings chsh_optimal_settings();

struct ChshEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::array<double, 4> correlators{};  // E00, E01, E10, E11
};

/// S = E00 + E01 + E10 - E11, estimated with n_total rounds split evenly
/// over the four setting pairs (pair k seeded child_seed(seed, k)).
ChshEstimate chsh(Model model,
                  const StateParameter &state,
                  const ChshSettings &settings,
                  std::uint64_t n_total,
                  std::uint64_t seed);

/// The analytic S the model should produce for these settings.
double chsh_target(Model model, const StateParameter &state, const ChshSettings &settings);

struct SettingsPair {
    BlochVector a, b;
};

struct SweepOptions {
    Model model = Model::epr2_full;
    std::vector<double> theta_grid;            // empty -> default_theta_grid()
    std::vector<SettingsPair> explicit_pairs;  // if non-empty, used verbatim
    int random_pairs = 25;
    bool include_anchors = true;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = kDefaultSeed;
    double z_max = 5.0;
    double abs_floor = 0.005;
};

struct SweepRow {
    Model model;
    double theta;  // effective value (pi/4 for singlet)
    BlochVector a, b;
    std::uint64_t n;
    std::uint64_t seed;  // this row's own estimation seed
    std::array<double, 4> p_hat;  // estimated cell frequencies
    std::array<double, 4> q;      // analytic target cell probabilities
    double worst_z;
    std::uint64_t nonlocal_rounds;
    double nonlocal_freq;
    bool pass;
};

std::vector<double> default_theta_grid();  // pi/16, pi/8, 3pi/16, pi/4

/// Fixed regression anchors: axis-aligned pairs plus the four CHSH-optimal
/// setting pairs.
std::vector<SettingsPair> anchor_pairs();

/// One estimate-and-compare row per (theta, setting pair). Settings come
/// from explicit_pairs if given, else anchors plus random_pairs fresh
/// rotation-invariant draws per theta (settings stream child_seed(seed, 0));
/// row r is estimated under child_seed(seed, 1 + r). Rejects an empty
/// settings source or samples = 0.
std::vector<SweepRow> sweep(const SweepOptions &options);

}  // namespace boxsim
