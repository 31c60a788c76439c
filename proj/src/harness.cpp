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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "boxsim/boxes.h"
#include "boxsim/protocol.h"
#include "boxsim/random.h"

namespace boxsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCellSigns[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
constexpr double kNoSignalingZMax = 5.0;

RoundResult simulate_round(Model model,
                           const StateParameter &state,
                           const BlochVector &a,
                           const BlochVector &b,
                           const BinaryCorrelation &oracle_target,
                           SharedRandomness &shared) {
    switch (model) {
        case Model::preliminary:
            return simulate_preliminary(state, a, b, shared);
        case Model::epr2_nonlocal:
            return simulate_epr2_nonlocal(state, a, b, shared);
        case Model::epr2_full:
            return simulate_epr2_full(state, a, b, shared);
        case Model::singlet:
            return simulate_singlet(a, b, shared);
        case Model::broken:
            return simulate_broken_signaling(state, a, b, shared);
        case Model::oracle:
        case Model::local_oracle: {
            auto [alpha, beta] = oracle_box(shared, oracle_target);
            return RoundResult{alpha, beta, false, 0, 0, std::nullopt};
        }
    }
    throw std::logic_error("unknown model");
}

EstimatedDistribution run_chunk(Model model,
                                const StateParameter &state,
                                const BlochVector &a,
                                const BlochVector &b,
                                const BinaryCorrelation &oracle_target,
                                std::uint64_t rounds,
                                std::uint64_t chunk_seed) {
    SharedRandomness shared(chunk_seed);
    EstimatedDistribution out;
    out.n = rounds;
    for (std::uint64_t r = 0; r < rounds; r++) {
        RoundResult result = simulate_round(model, state, a, b, oracle_target, shared);
        out.counts[cell_index(result.alpha, result.beta)]++;
        out.nonlocal_rounds += result.used_nonlocal ? 1 : 0;
    }
    return out;
}

void merge_into(EstimatedDistribution &acc, const EstimatedDistribution &part) {
    for (int cell = 0; cell < 4; cell++) {
        acc.counts[cell] += part.counts[cell];
    }
    acc.n += part.n;
    acc.nonlocal_rounds += part.nonlocal_rounds;
}

}  // namespace

// Counts are identical for every worker count because chunk j always runs
// on stream child_seed(seed, j) and merging is count addition.
EstimatedDistribution estimate_with_workers(Model model,
                                            const StateParameter &state,
                                            const BlochVector &a,
                                            const BlochVector &b,
                                            std::uint64_t n,
                                            std::uint64_t seed,
                                            unsigned workers) {
    if (n < 1) {
        throw std::invalid_argument("estimate requires n >= 1");
    }
    BinaryCorrelation oracle_target = model_target(model, state, a, b);
    std::uint64_t num_chunks = (n + kChunkRounds - 1) / kChunkRounds;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, num_chunks));

    auto chunk_rounds = [n](std::uint64_t j) {
        return std::min<std::uint64_t>(kChunkRounds, n - j * kChunkRounds);
    };

    EstimatedDistribution total;
    if (workers <= 1) {
        for (std::uint64_t j = 0; j < num_chunks; j++) {
            merge_into(total, run_chunk(model, state, a, b, oracle_target, chunk_rounds(j),
                                        child_seed(seed, j)));
        }
        return total;
    }

    std::vector<EstimatedDistribution> partial(workers);
    std::atomic<std::uint64_t> next{0};
    auto work = [&](unsigned w) {
        for (;;) {
            std::uint64_t j = next.fetch_add(1);
            if (j >= num_chunks) {
                return;
            }
            merge_into(partial[w], run_chunk(model, state, a, b, oracle_target,
                                             chunk_rounds(j), child_seed(seed, j)));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; w++) {
        pool.emplace_back(work, w);
    }
    work(0);
    for (std::thread &t : pool) {
        t.join();
    }
    for (const EstimatedDistribution &part : partial) {
        merge_into(total, part);
    }
    return total;
}

std::string_view model_name(Model model) {
    switch (model) {
        case Model::preliminary:
            return "preliminary";
        case Model::epr2_nonlocal:
            return "epr2-nonlocal";
        case Model::epr2_full:
            return "epr2-full";
        case Model::singlet:
            return "singlet";
        case Model::oracle:
            return "oracle";
        case Model::local_oracle:
            return "local-oracle";
        case Model::broken:
            return "broken-signaling";
    }
    return "unknown";
}

std::optional<Model> parse_model(std::string_view name) {
    for (Model model : {Model::preliminary, Model::epr2_nonlocal, Model::epr2_full,
                        Model::singlet, Model::oracle, Model::local_oracle, Model::broken}) {
        if (name == model_name(model)) {
            return model;
        }
    }
    return std::nullopt;
}

BinaryCorrelation model_target(Model model,
                               const StateParameter &state,
                               const BlochVector &a,
                               const BlochVector &b) {
    switch (model) {
        case Model::singlet:
            return quantum_correlation(StateParameter(kPi / 4.0), a, b);
        case Model::epr2_nonlocal:
            return epr2_decompose(state, a, b).nonlocal_part;
        case Model::local_oracle:
            return epr2_decompose(state, a, b).local_part;
        default:
            return quantum_correlation(state, a, b);
    }
}

int cell_index(int alpha, int beta) {
    return (alpha < 0 ? 2 : 0) + (beta < 0 ? 1 : 0);
}

double EstimatedDistribution::p_hat(int cell) const {
    return n == 0 ? 0.0 : static_cast<double>(counts[cell]) / static_cast<double>(n);
}

double EstimatedDistribution::standard_error(int cell) const {
    if (n == 0) {
        return 0.0;
    }
    double p = p_hat(cell);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double EstimatedDistribution::alice_marginal() const {
    if (n == 0) {
        return 0.0;
    }
    return (static_cast<double>(counts[0]) + static_cast<double>(counts[1]) -
            static_cast<double>(counts[2]) - static_cast<double>(counts[3])) /
           static_cast<double>(n);
}

double EstimatedDistribution::bob_marginal() const {
    if (n == 0) {
        return 0.0;
    }
    return (static_cast<double>(counts[0]) - static_cast<double>(counts[1]) +
            static_cast<double>(counts[2]) - static_cast<double>(counts[3])) /
           static_cast<double>(n);
}

double EstimatedDistribution::correlator() const {
    if (n == 0) {
        return 0.0;
    }
    return (static_cast<double>(counts[0]) - static_cast<double>(counts[1]) -
            static_cast<double>(counts[2]) + static_cast<double>(counts[3])) /
           static_cast<double>(n);
}

double EstimatedDistribution::nonlocal_freq() const {
    return n == 0 ? 0.0 : static_cast<double>(nonlocal_rounds) / static_cast<double>(n);
}

EstimatedDistribution estimate(Model model,
                               const StateParameter &state,
                               const BlochVector &a,
                               const BlochVector &b,
                               std::uint64_t n,
                               std::uint64_t seed) {
    return estimate_with_workers(model, state, a, b, n, seed, 0);
}

TestReport compare(const EstimatedDistribution &est,
                   const BinaryCorrelation &target,
                   double z_max,
                   double abs_floor) {
    TestReport report{target, 0.0, true};
    for (int cell = 0; cell < 4; cell++) {
        double p = distribution_probability(target, kCellSigns[cell][0], kCellSigns[cell][1]);
        double diff = std::abs(est.p_hat(cell) - p);
        double se = est.standard_error(cell);
        double z;
        if (est.counts[cell] == 0 && p == 0.0) {
            z = 0.0;
        } else if (se > 0.0) {
            z = diff / se;
        } else {
            z = diff == 0.0 ? 0.0 : kInf;
        }
        report.worst_z = std::max(report.worst_z, z);
        if (!(z <= z_max || diff <= abs_floor)) {
            report.pass = false;
        }
    }
    return report;
}

TestReport no_signaling_test(Model model,
                             const StateParameter &state,
                             Side fixed_side,
                             const BlochVector &fixed_setting,
                             const std::vector<BlochVector> &varied_settings,
                             std::uint64_t n,
                             std::uint64_t seed) {
    if (varied_settings.size() < 2) {
        throw std::invalid_argument("no_signaling_test requires >= 2 varied settings");
    }
    if (n < 1) {
        throw std::invalid_argument("no_signaling_test requires n >= 1");
    }
    bool alice_fixed = fixed_side == Side::alice;

    std::vector<double> plus_rate(varied_settings.size(), 0.0);
    std::vector<unsigned char> baseline;  // fixed party's outcome stream, run 0
    if (alice_fixed) {
        baseline.resize(n);
    }
    bool replay_ok = true;

    for (std::size_t i = 0; i < varied_settings.size(); i++) {
        BlochVector a = alice_fixed ? fixed_setting : varied_settings[i];
        BlochVector b = alice_fixed ? varied_settings[i] : fixed_setting;
        BinaryCorrelation oracle_target = model_target(model, state, a, b);
        std::uint64_t plus = 0;
        std::uint64_t round = 0;
        std::uint64_t num_chunks = (n + kChunkRounds - 1) / kChunkRounds;
        for (std::uint64_t j = 0; j < num_chunks; j++) {
            SharedRandomness shared(child_seed(seed, j));
            std::uint64_t rounds = std::min<std::uint64_t>(kChunkRounds, n - j * kChunkRounds);
            for (std::uint64_t r = 0; r < rounds; r++, round++) {
                RoundResult result = simulate_round(model, state, a, b, oracle_target, shared);
                int fixed_outcome = alice_fixed ? result.alpha : result.beta;
                plus += fixed_outcome == +1 ? 1 : 0;
                if (alice_fixed) {
                    unsigned char bit = result.alpha == +1 ? 1 : 0;
                    if (i == 0) {
                        baseline[round] = bit;
                    } else if (baseline[round] != bit) {
                        replay_ok = false;
                    }
                }
            }
        }
        plus_rate[i] = static_cast<double>(plus) / static_cast<double>(n);
    }

    // Pairwise pooled two-proportion z across partner settings.
    double worst = 0.0;
    for (std::size_t i = 0; i < plus_rate.size(); i++) {
        for (std::size_t j = i + 1; j < plus_rate.size(); j++) {
            double pool = 0.5 * (plus_rate[i] + plus_rate[j]);
            double denom = std::sqrt(pool * (1.0 - pool) * (2.0 / static_cast<double>(n)));
            double z;
            if (denom > 0.0) {
                z = std::abs(plus_rate[i] - plus_rate[j]) / denom;
            } else {
                z = plus_rate[i] == plus_rate[j] ? 0.0 : kInf;
            }
            worst = std::max(worst, z);
        }
    }

    BlochVector a0 = alice_fixed ? fixed_setting : varied_settings[0];
    BlochVector b0 = alice_fixed ? varied_settings[0] : fixed_setting;
    return TestReport{
        model_target(model, state, a0, b0),
        worst,
        worst <= kNoSignalingZMax && replay_ok,
    };
}

ChshSettings chsh_optimal_settings() {
    return ChshSettings{
        kZAxis,
        kXAxis,
        BlochVector::normalized(1.0, 0.0, 1.0),
        BlochVector::normalized(-1.0, 0.0, 1.0),
    };
}

ChshEstimate chsh(Model model,
                  const StateParameter &state,
                  const ChshSettings &settings,
                  std::uint64_t n_total,
                  std::uint64_t seed) {
    if (n_total < 4) {
        throw std::invalid_argument("chsh requires n >= 4");
    }
    const BlochVector *pairs[4][2] = {
        {&settings.a0, &settings.b0},
        {&settings.a0, &settings.b1},
        {&settings.a1, &settings.b0},
        {&settings.a1, &settings.b1},
    };
    std::uint64_t per_pair = n_total / 4;
    ChshEstimate out;
    double variance = 0.0;
    for (int k = 0; k < 4; k++) {
        EstimatedDistribution est = estimate(model, state, *pairs[k][0], *pairs[k][1],
                                             per_pair, child_seed(seed, k));
        double e = est.correlator();
        out.correlators[k] = e;
        variance += (1.0 - e * e) / static_cast<double>(per_pair);
    }
    out.value = out.correlators[0] + out.correlators[1] + out.correlators[2] - out.correlators[3];
    out.std_error = std::sqrt(variance);
    return out;
}

double chsh_target(Model model, const StateParameter &state, const ChshSettings &settings) {
    return model_target(model, state, settings.a0, settings.b0).correlator +
           model_target(model, state, settings.a0, settings.b1).correlator +
           model_target(model, state, settings.a1, settings.b0).correlator -
           model_target(model, state, settings.a1, settings.b1).correlator;
}

std::vector<double> default_theta_grid() {
    return {kPi / 16.0, kPi / 8.0, 3.0 * kPi / 16.0, kPi / 4.0};
}

std::vector<SettingsPair> anchor_pairs() {
    BlochVector b0 = BlochVector::normalized(1.0, 0.0, 1.0);
    BlochVector b1 = BlochVector::normalized(-1.0, 0.0, 1.0);
    return {
        {kZAxis, kZAxis},
        {kXAxis, kXAxis},
        {kYAxis, kYAxis},
        {kZAxis, kXAxis},
        {kZAxis, b0},
        {kZAxis, b1},
        {kXAxis, b0},
        {kXAxis, b1},
    };
}

std::vector<SweepRow> sweep(const SweepOptions &options) {
    if (options.samples < 1) {
        throw std::invalid_argument("sweep requires samples >= 1");
    }
    bool explicit_mode = !options.explicit_pairs.empty();
    if (!explicit_mode && !options.include_anchors && options.random_pairs <= 0) {
        throw std::invalid_argument("sweep settings source is empty");
    }
    std::vector<double> grid = options.theta_grid.empty() ? default_theta_grid() : options.theta_grid;

    SharedRandomness settings_stream(child_seed(options.seed, 0));
    std::vector<SweepRow> rows;
    std::uint64_t row_index = 0;
    for (double theta : grid) {
        StateParameter state(theta);
        std::vector<SettingsPair> pairs;
        if (explicit_mode) {
            pairs = options.explicit_pairs;
        } else {
            if (options.include_anchors) {
                pairs = anchor_pairs();
            }
            for (int k = 0; k < options.random_pairs; k++) {
                BlochVector a = settings_stream.uniform_unit_vector();
                BlochVector b = settings_stream.uniform_unit_vector();
                pairs.push_back(SettingsPair{a, b});
            }
        }
        for (const SettingsPair &pair : pairs) {
            std::uint64_t row_seed = child_seed(options.seed, 1 + row_index);
            EstimatedDistribution est =
                estimate(options.model, state, pair.a, pair.b, options.samples, row_seed);
            BinaryCorrelation target = model_target(options.model, state, pair.a, pair.b);
            TestReport report = compare(est, target, options.z_max, options.abs_floor);

            SweepRow row;
            row.model = options.model;
            row.theta = options.model == Model::singlet ? kPi / 4.0 : theta;
            row.a = pair.a;
            row.b = pair.b;
            row.n = options.samples;
            row.seed = row_seed;
            for (int cell = 0; cell < 4; cell++) {
                row.p_hat[cell] = est.p_hat(cell);
                row.q[cell] =
                    distribution_probability(target, kCellSigns[cell][0], kCellSigns[cell][1]);
            }
            row.worst_z = report.worst_z;
            row.nonlocal_rounds = est.nonlocal_rounds;
            row.nonlocal_freq = est.nonlocal_freq();
            row.pass = report.pass;
            rows.push_back(row);
            row_index++;
        }
    }
    return rows;
}

}  // namespace boxsim
