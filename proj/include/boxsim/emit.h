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

#include <cstdint>
#include <string>
#include <vector>

#include "boxsim/harness.h"

namespace boxsim {

/// Column order is normative:
/// model,theta,ax,ay,az,bx,by,bz,n,seed,
/// p_pp,p_pm,p_mp,p_mm,q_pp,q_pm,q_mp,q_mm,worst_z,nonlocal_freq,pass
/// Inputs (theta, settings) print at full precision so a row alone
/// reproduces its run; q_* are the analytic targets. Formatting is fixed,
/// so identical rows serialize to identical bytes.
std::string csv_header();
std::string csv_row(const SweepRow &row);
std::string to_csv(const std::vector<SweepRow> &rows);

/// JSON mirror of the CSV: {"header": {spec_version, seed, partition_rule},
/// "rows": [one object per CSV row, same keys as the columns]}.
std::string to_json(const std::vector<SweepRow> &rows, std::uint64_t master_seed);

}  // namespace boxsim
