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

#include "boxsim/emit.h"

#include <cstdio>

#include <json.hpp>

#include "boxsim/version.h"

namespace boxsim {

namespace {

// %.17g round-trips doubles; %.9g is ample for probabilities and z scores.
std::string full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string brief(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string csv_header() {
    return "model,theta,ax,ay,az,bx,by,bz,n,seed,"
           "p_pp,p_pm,p_mp,p_mm,q_pp,q_pm,q_mp,q_mm,worst_z,nonlocal_freq,pass";
}

std::string csv_row(const SweepRow &row) {
    std::string out;
    out += model_name(row.model);
    out += ',';
    out += full(row.theta);
    for (double v : {row.a.x, row.a.y, row.a.z, row.b.x, row.b.y, row.b.z}) {
        out += ',';
        out += full(v);
    }
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.seed);
    for (int cell = 0; cell < 4; cell++) {
        out += ',';
        out += brief(row.p_hat[cell]);
    }
    for (int cell = 0; cell < 4; cell++) {
        out += ',';
        out += brief(row.q[cell]);
    }
    out += ',';
    out += brief(row.worst_z);
    out += ',';
    out += brief(row.nonlocal_freq);
    out += ',';
    out += row.pass ? '1' : '0';
    return out;
}

std::string to_csv(const std::vector<SweepRow> &rows) {
    std::string out = csv_header();
    out += '\n';
    for (const SweepRow &row : rows) {
        out += csv_row(row);
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<SweepRow> &rows, std::uint64_t master_seed) {
    nlohmann::json doc;
    doc["header"] = {
        {"spec_version", kSpecVersion},
        {"seed", master_seed},
        {"partition_rule", kPartitionRule},
    };
    nlohmann::json out_rows = nlohmann::json::array();
    for (const SweepRow &row : rows) {
        out_rows.push_back({
            {"model", model_name(row.model)},
            {"theta", row.theta},
            {"ax", row.a.x},
            {"ay", row.a.y},
            {"az", row.a.z},
            {"bx", row.b.x},
            {"by", row.b.y},
            {"bz", row.b.z},
            {"n", row.n},
            {"seed", row.seed},
            {"p_pp", row.p_hat[0]},
            {"p_pm", row.p_hat[1]},
            {"p_mp", row.p_hat[2]},
            {"p_mm", row.p_hat[3]},
            {"q_pp", row.q[0]},
            {"q_pm", row.q[1]},
            {"q_mp", row.q[2]},
            {"q_mm", row.q[3]},
            {"worst_z", row.worst_z},
            {"nonlocal_freq", row.nonlocal_freq},
            {"pass", row.pass},
        });
    }
    doc["rows"] = std::move(out_rows);
    return doc.dump(2) + "\n";
}

}  // namespace boxsim
