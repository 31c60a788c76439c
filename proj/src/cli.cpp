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

#include "boxsim/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boxsim/emit.h"
#include "boxsim/harness.h"
#include "boxsim/random.h"
#include "boxsim/version.h"

namespace boxsim {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;

struct CliOptions {
    std::string model = "epr2-full";
    double theta = kPi / 4.0;
    double theta_deg = 45.0;
    std::string alice = "0,0,1";
    std::string bob = "0,0,1";
    std::uint64_t samples = 1000000;
    std::uint64_t seed = kDefaultSeed;
    std::string format;
    std::string output;
    double z_max = 5.0;
    double abs_floor = 0.005;
    std::vector<double> thetas;
    int pairs = 25;
    bool no_anchors = false;
    bool fault_inject = false;
    std::string a0 = "0,0,1";
    std::string a1 = "1,0,0";
    std::string b0 = "1,0,1";
    std::string b1 = "-1,0,1";
};

[[noreturn]] void usage_error(const std::string &message) {
    throw CLI::ValidationError("boxsim", message);
}

BlochVector parse_setting(const std::string &text, const char *name) {
    double x = 0, y = 0, z = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), " %lf , %lf , %lf %n", &x, &y, &z, &consumed) != 3 ||
        consumed != static_cast<int>(text.size())) {
        usage_error(std::string(name) + ": expected three comma-separated numbers, got '" +
                    text + "'");
    }
    try {
        return BlochVector::normalized(x, y, z);
    } catch (const std::invalid_argument &e) {
        usage_error(std::string(name) + ": " + e.what());
    }
}

Model parse_model_or_die(const std::string &name) {
    std::optional<Model> model = parse_model(name);
    if (!model) {
        usage_error("unknown model '" + name + "'");
    }
    return *model;
}

double effective_theta(const CliOptions &opt, const CLI::App *cmd) {
    if (cmd->count("--theta-deg") > 0) {
        return opt.theta_deg / 180.0 * kPi;
    }
    return opt.theta;
}

StateParameter make_state(Model model, double theta) {
    if (model == Model::singlet) {
        return StateParameter(kPi / 4.0);  // theta is ignored by this model
    }
    try {
        return StateParameter(theta);
    } catch (const std::invalid_argument &e) {
        usage_error(e.what());
    }
}

void require_samples(std::uint64_t samples) {
    if (samples < 1) {
        usage_error("--samples must be at least 1");
    }
}

int write_payload(const std::string &payload, const std::string &path) {
    if (path.empty()) {
        std::fputs(payload.c_str(), stdout);
        return kExitPass;
    }
    std::ofstream out(path, std::ios::binary);
    out << payload;
    if (!out.good()) {
        std::fprintf(stderr, "boxsim: cannot write %s\n", path.c_str());
        return kExitUsage;
    }
    return kExitPass;
}

SweepRow make_row(Model model,
                  const StateParameter &state,
                  const BlochVector &a,
                  const BlochVector &b,
                  std::uint64_t seed,
                  const EstimatedDistribution &est,
                  const BinaryCorrelation &target,
                  const TestReport &report) {
    SweepRow row;
    row.model = model;
    row.theta = state.theta();
    row.a = a;
    row.b = b;
    row.n = est.n;
    row.seed = seed;
    const int signs[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    for (int cell = 0; cell < 4; cell++) {
        row.p_hat[cell] = est.p_hat(cell);
        row.q[cell] = distribution_probability(target, signs[cell][0], signs[cell][1]);
    }
    row.worst_z = report.worst_z;
    row.nonlocal_rounds = est.nonlocal_rounds;
    row.nonlocal_freq = est.nonlocal_freq();
    row.pass = report.pass;
    return row;
}

void print_row_table(const SweepRow &row, const EstimatedDistribution &est) {
    std::printf("model %s  theta %.10g  n %llu  seed %llu\n",
                std::string(model_name(row.model)).c_str(), row.theta,
                static_cast<unsigned long long>(row.n),
                static_cast<unsigned long long>(row.seed));
    std::printf("a = (%.10g, %.10g, %.10g)   b = (%.10g, %.10g, %.10g)\n",
                row.a.x, row.a.y, row.a.z, row.b.x, row.b.y, row.b.z);
    std::printf("%-6s %12s %12s\n", "cell", "estimate", "target");
    const char *labels[4] = {"++", "+-", "-+", "--"};
    for (int cell = 0; cell < 4; cell++) {
        std::printf("%-6s %12.6f %12.6f\n", labels[cell], row.p_hat[cell], row.q[cell]);
    }
    std::printf("marginals: A %+.6f  B %+.6f   correlator %+.6f\n",
                est.alice_marginal(), est.bob_marginal(), est.correlator());
    std::printf("nonlocal rounds: %.6f of 1\n", row.nonlocal_freq);
    std::printf("worst z: %.3f -> %s\n", row.worst_z, row.pass ? "consistent" : "DEVIATES");
}

int cmd_simulate(const CliOptions &opt, const CLI::App *cmd) {
    Model model = parse_model_or_die(opt.model);
    require_samples(opt.samples);
    StateParameter state = make_state(model, effective_theta(opt, cmd));
    BlochVector a = parse_setting(opt.alice, "--alice");
    BlochVector b = parse_setting(opt.bob, "--bob");

    EstimatedDistribution est = estimate(model, state, a, b, opt.samples, opt.seed);
    BinaryCorrelation target = model_target(model, state, a, b);
    TestReport report = compare(est, target, opt.z_max, opt.abs_floor);
    SweepRow row = make_row(model, state, a, b, opt.seed, est, target, report);

    if (opt.format == "csv") {
        return write_payload(to_csv({row}), opt.output);
    }
    if (opt.format == "json") {
        return write_payload(to_json({row}, opt.seed), opt.output);
    }
    if (!opt.format.empty() && opt.format != "table") {
        usage_error("--format must be table, csv, or json");
    }
    print_row_table(row, est);
    return kExitPass;
}

SweepOptions make_sweep_options(Model model, const CliOptions &opt, std::uint64_t seed) {
    SweepOptions sweep_opt;
    sweep_opt.model = model;
    sweep_opt.theta_grid = opt.thetas;
    sweep_opt.random_pairs = opt.pairs;
    sweep_opt.include_anchors = !opt.no_anchors;
    sweep_opt.samples = opt.samples;
    sweep_opt.seed = seed;
    sweep_opt.z_max = opt.z_max;
    sweep_opt.abs_floor = opt.abs_floor;
    return sweep_opt;
}

int cmd_sweep(const CliOptions &opt) {
    Model model = parse_model_or_die(opt.model);
    require_samples(opt.samples);
    std::vector<SweepRow> rows;
    try {
        rows = sweep(make_sweep_options(model, opt, opt.seed));
    } catch (const std::invalid_argument &e) {
        usage_error(e.what());
    }
    if (opt.format == "json") {
        return write_payload(to_json(rows, opt.seed), opt.output);
    }
    if (!opt.format.empty() && opt.format != "csv") {
        usage_error("--format must be csv or json");
    }
    return write_payload(to_csv(rows), opt.output);
}

int cmd_chsh(const CliOptions &opt, const CLI::App *cmd) {
    Model model = parse_model_or_die(opt.model);
    if (opt.samples < 4) {
        usage_error("--samples must be at least 4");
    }
    StateParameter state = make_state(model, effective_theta(opt, cmd));
    ChshSettings settings{
        parse_setting(opt.a0, "--a0"),
        parse_setting(opt.a1, "--a1"),
        parse_setting(opt.b0, "--b0"),
        parse_setting(opt.b1, "--b1"),
    };
    ChshEstimate est = chsh(model, state, settings, opt.samples, opt.seed);
    double target = chsh_target(model, state, settings);
    const char *names[4] = {"E00", "E01", "E10", "E11"};
    const BlochVector *pairs[4][2] = {
        {&settings.a0, &settings.b0},
        {&settings.a0, &settings.b1},
        {&settings.a1, &settings.b0},
        {&settings.a1, &settings.b1},
    };
    std::printf("CHSH model %s  theta %.10g  n %llu  seed %llu\n",
                std::string(model_name(model)).c_str(), state.theta(),
                static_cast<unsigned long long>(opt.samples),
                static_cast<unsigned long long>(opt.seed));
    for (int k = 0; k < 4; k++) {
        double t = model_target(model, state, *pairs[k][0], *pairs[k][1]).correlator;
        std::printf("%s = %+.6f   (target %+.6f)\n", names[k], est.correlators[k], t);
    }
    std::printf("S = %.6f +- %.6f   (target %.6f)\n", est.value, est.std_error, target);
    return kExitPass;
}

struct PhaseOutcome {
    bool ok;
    std::string detail;
};

void print_phase(int index, int total, const char *title, const PhaseOutcome &outcome) {
    std::printf("[%d/%d] %-44s %s%s%s\n", index, total, title, outcome.detail.c_str(),
                outcome.detail.empty() ? "" : "  ", outcome.ok ? "ok" : "FAIL");
}

void print_offenders(const std::vector<SweepRow> &rows) {
    int shown = 0;
    for (const SweepRow &row : rows) {
        if (row.pass || shown >= 10) {
            continue;
        }
        std::printf("      FAIL %s theta=%.6g a=(%.4g,%.4g,%.4g) b=(%.4g,%.4g,%.4g) worst_z=%.3g\n",
                    std::string(model_name(row.model)).c_str(), row.theta, row.a.x, row.a.y,
                    row.a.z, row.b.x, row.b.y, row.b.z, row.worst_z);
        shown++;
    }
}

std::string format_double(const char *fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

PhaseOutcome sweep_phase(const std::vector<SweepRow> &rows) {
    double worst = 0.0;
    int failures = 0;
    for (const SweepRow &row : rows) {
        worst = std::max(worst, row.worst_z);
        failures += row.pass ? 0 : 1;
    }
    std::string detail = std::to_string(rows.size()) + " rows, worst z " +
                         format_double("%.3g", worst);
    if (failures > 0) {
        detail += ", " + std::to_string(failures) + " failing";
    }
    return PhaseOutcome{failures == 0, detail};
}

PhaseOutcome frequency_phase(const std::vector<SweepRow> &rows, const std::vector<double> &grid) {
    // Pools the nonlocal-branch counts of all rows per theta and demands
    // agreement with s = sin(2 theta) within 3 binomial sigma (exact at s = 1).
    bool ok = true;
    double worst_sigmas = 0.0;
    for (double theta : grid) {
        StateParameter state(theta);
        double s = state.sin2theta();
        std::uint64_t nonlocal = 0;
        std::uint64_t n = 0;
        for (const SweepRow &row : rows) {
            if (row.theta == theta) {
                nonlocal += row.nonlocal_rounds;
                n += row.n;
            }
        }
        if (n == 0) {
            continue;
        }
        double freq = static_cast<double>(nonlocal) / static_cast<double>(n);
        double sigma = std::sqrt(s * (1.0 - s) / static_cast<double>(n));
        double dev = std::abs(freq - s);
        if (sigma == 0.0) {
            ok = ok && dev == 0.0;
        } else {
            worst_sigmas = std::max(worst_sigmas, dev / sigma);
            ok = ok && dev <= 3.0 * sigma;
        }
    }
    return PhaseOutcome{ok, "max deviation " + format_double("%.2f", worst_sigmas) + " sigma"};
}

int cmd_verify(const CliOptions &opt) {
    require_samples(opt.samples);
    std::vector<double> grid = opt.thetas.empty() ? default_theta_grid() : opt.thetas;
    for (double theta : grid) {
        make_state(Model::epr2_full, theta);  // reject bad grid values up front
    }
    Model main_model = opt.fault_inject ? Model::broken : Model::epr2_full;
    bool all_ok = true;

    CliOptions grid_opt = opt;
    grid_opt.thetas = grid;
    std::vector<SweepRow> rows =
        sweep(make_sweep_options(Model::preliminary, grid_opt, child_seed(opt.seed, 1)));
    PhaseOutcome outcome = sweep_phase(rows);
    print_phase(1, 5, "preliminary model vs quantum target", outcome);
    print_offenders(rows);
    all_ok = all_ok && outcome.ok;

    std::vector<SweepRow> main_rows =
        sweep(make_sweep_options(main_model, grid_opt, child_seed(opt.seed, 2)));
    outcome = sweep_phase(main_rows);
    print_phase(2, 5, "epr2 full model vs quantum target", outcome);
    print_offenders(main_rows);
    all_ok = all_ok && outcome.ok;

    outcome = frequency_phase(main_rows, grid);
    print_phase(3, 5, "nonlocal-branch frequency vs sin(2 theta)", outcome);
    all_ok = all_ok && outcome.ok;

    {
        StateParameter state(grid.front());
        SharedRandomness settings_stream(child_seed(opt.seed, 3));
        BlochVector fixed_a = settings_stream.uniform_unit_vector();
        BlochVector fixed_b = settings_stream.uniform_unit_vector();
        std::vector<BlochVector> varied_bob, varied_alice;
        for (int k = 0; k < 5; k++) {
            varied_bob.push_back(settings_stream.uniform_unit_vector());
            varied_alice.push_back(settings_stream.uniform_unit_vector());
        }
        TestReport ns_a = no_signaling_test(main_model, state, Side::alice, fixed_a, varied_bob,
                                            opt.samples, child_seed(opt.seed, 4));
        TestReport ns_b = no_signaling_test(main_model, state, Side::bob, fixed_b, varied_alice,
                                            opt.samples, child_seed(opt.seed, 5));
        outcome = PhaseOutcome{ns_a.pass && ns_b.pass,
                               "worst z " + format_double("%.3g", std::max(ns_a.worst_z, ns_b.worst_z)) +
                                   " incl. Alice replay"};
        print_phase(4, 5, "no-signaling across partner settings", outcome);
        all_ok = all_ok && outcome.ok;
    }

    {
        StateParameter state(kPi / 4.0);
        ChshEstimate est = chsh(main_model, state, chsh_optimal_settings(), 4 * opt.samples,
                                child_seed(opt.seed, 6));
        double target = chsh_target(main_model, state, chsh_optimal_settings());
        double tolerance = std::max(5.0 * est.std_error, 0.005);
        bool ok = std::abs(est.value - target) <= tolerance;
        outcome = PhaseOutcome{ok, "S = " + format_double("%.4f", est.value) + " +- " +
                                       format_double("%.4f", est.std_error) + " (target " +
                                       format_double("%.4f", target) + ")"};
        print_phase(5, 5, "CHSH at theta = pi/4", outcome);
        all_ok = all_ok && ok;
    }

    if (!opt.output.empty()) {
        std::vector<SweepRow> all_rows = rows;
        all_rows.insert(all_rows.end(), main_rows.begin(), main_rows.end());
        std::string payload =
            opt.format == "json" ? to_json(all_rows, opt.seed) : to_csv(all_rows);
        int rc = write_payload(payload, opt.output);
        if (rc != kExitPass) {
            return rc;
        }
    }

    std::printf("verify: %s\n", all_ok ? "PASS" : "FAIL");
    return all_ok ? kExitPass : kExitStatFail;
}

}  // namespace

int run_cli(int argc, char **argv) {
    CLI::App app{"Simulate two-qubit measurement statistics with no-signaling box resources"};
    app.require_subcommand(1);

    CliOptions sim_opt;
    CLI::App *sim = app.add_subcommand(
        "simulate", "Estimate one model at one setting pair, next to its analytic target");
    sim->add_option("--model", sim_opt.model,
                    "preliminary|epr2-nonlocal|epr2-full|singlet|oracle")
        ->capture_default_str();
    CLI::Option *sim_theta =
        sim->add_option("--theta", sim_opt.theta, "State parameter in radians, (0, pi/4]")
            ->capture_default_str();
    sim->add_option("--theta-deg", sim_opt.theta_deg, "State parameter in degrees, (0, 45]")
        ->excludes(sim_theta);
    sim->add_option("--alice", sim_opt.alice, "Alice's setting x,y,z (renormalized)")
        ->capture_default_str();
    sim->add_option("--bob", sim_opt.bob, "Bob's setting x,y,z (renormalized)")
        ->capture_default_str();
    sim->add_option("--samples", sim_opt.samples, "Rounds to simulate")->capture_default_str();
    sim->add_option("--seed", sim_opt.seed, "Stream seed")->capture_default_str();
    sim->add_option("--format", sim_opt.format, "table|csv|json (default table)");
    sim->add_option("--output", sim_opt.output, "Write csv/json to this file");
    sim->add_option("--z-max", sim_opt.z_max, "Per-cell z threshold")->capture_default_str();
    sim->add_option("--abs-floor", sim_opt.abs_floor, "Absolute per-cell tolerance floor")
        ->capture_default_str();

    CliOptions verify_opt;
    CLI::App *verify = app.add_subcommand(
        "verify", "Run the statistical acceptance sweep; exit 1 on any failure");
    verify->add_option("--samples", verify_opt.samples, "Rounds per row")->capture_default_str();
    verify->add_option("--pairs", verify_opt.pairs, "Random setting pairs per theta")
        ->capture_default_str();
    verify->add_option("--seed", verify_opt.seed, "Master seed")->capture_default_str();
    verify->add_option("--thetas", verify_opt.thetas,
                       "Theta grid in radians (default pi/16,pi/8,3pi/16,pi/4)")
        ->delimiter(',');
    verify->add_flag("--no-anchors", verify_opt.no_anchors, "Skip the fixed anchor pairs");
    verify->add_option("--z-max", verify_opt.z_max, "Per-cell z threshold")->capture_default_str();
    verify->add_option("--abs-floor", verify_opt.abs_floor, "Absolute per-cell tolerance floor")
        ->capture_default_str();
    verify->add_option("--format", verify_opt.format, "csv|json for --output (default csv)");
    verify->add_option("--output", verify_opt.output, "Write the sweep rows to this file");
    verify->add_flag("--fault-inject", verify_opt.fault_inject, "")->group("");

    CliOptions sweep_opt_cli;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Emit estimate-vs-target rows over a grid");
    sweep_cmd->add_option("--model", sweep_opt_cli.model,
                          "preliminary|epr2-nonlocal|epr2-full|singlet|oracle")
        ->capture_default_str();
    sweep_cmd->add_option("--samples", sweep_opt_cli.samples, "Rounds per row")
        ->capture_default_str();
    sweep_cmd->add_option("--pairs", sweep_opt_cli.pairs, "Random setting pairs per theta")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_opt_cli.seed, "Master seed")->capture_default_str();
    sweep_cmd->add_option("--thetas", sweep_opt_cli.thetas,
                          "Theta grid in radians (default pi/16,pi/8,3pi/16,pi/4)")
        ->delimiter(',');
    sweep_cmd->add_flag("--no-anchors", sweep_opt_cli.no_anchors, "Skip the fixed anchor pairs");
    sweep_cmd->add_option("--z-max", sweep_opt_cli.z_max, "Per-cell z threshold")
        ->capture_default_str();
    sweep_cmd->add_option("--abs-floor", sweep_opt_cli.abs_floor,
                          "Absolute per-cell tolerance floor")
        ->capture_default_str();
    sweep_cmd->add_option("--format", sweep_opt_cli.format, "csv|json (default csv)");
    sweep_cmd->add_option("--output", sweep_opt_cli.output, "Write to this file instead of stdout");

    CliOptions chsh_opt;
    chsh_opt.samples = 4000000;
    CLI::App *chsh_cmd = app.add_subcommand("chsh", "Estimate S for four setting pairs");
    chsh_cmd->add_option("--model", chsh_opt.model, "Model to drive")->capture_default_str();
    CLI::Option *chsh_theta =
        chsh_cmd->add_option("--theta", chsh_opt.theta, "State parameter in radians, (0, pi/4]")
            ->capture_default_str();
    chsh_cmd->add_option("--theta-deg", chsh_opt.theta_deg, "State parameter in degrees, (0, 45]")
        ->excludes(chsh_theta);
    chsh_cmd->add_option("--samples", chsh_opt.samples, "Total rounds over the four pairs")
        ->capture_default_str();
    chsh_cmd->add_option("--seed", chsh_opt.seed, "Master seed")->capture_default_str();
    chsh_cmd->add_option("--a0", chsh_opt.a0, "Alice setting 0")->capture_default_str();
    chsh_cmd->add_option("--a1", chsh_opt.a1, "Alice setting 1")->capture_default_str();
    chsh_cmd->add_option("--b0", chsh_opt.b0, "Bob setting 0")->capture_default_str();
    chsh_cmd->add_option("--b1", chsh_opt.b1, "Bob setting 1")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (sim->parsed()) {
            return cmd_simulate(sim_opt, sim);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_opt);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_opt_cli);
        }
        if (chsh_cmd->parsed()) {
            return cmd_chsh(chsh_opt, chsh_cmd);
        }
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }
    return kExitUsage;
}

}  // namespace boxsim
