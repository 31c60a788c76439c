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

namespace boxsim {

/// A bipartite two-outcome distribution in marginal/correlator form:
///
///   P(alpha, beta) = (1 + alpha*M_A + beta*M_B + alpha*beta*C) / 4
///
/// with alpha, beta in {+1, -1}. Valid instances keep all four cell
/// probabilities nonnegative.
struct BinaryCorrelation {
    double alice_marginal;  // M_A
    double bob_marginal;    // M_B
    double correlator;      // C

    bool operator==(const BinaryCorrelation &o) const = default;
};

/// The cell probability P(alpha, beta) of the distribution above.
/// alpha and beta must be +1 or -1.
double distribution_probability(const BinaryCorrelation &d, int alpha, int beta);

/// Smallest of the four cell probabilities; nonnegativity check helper.
double min_probability(const BinaryCorrelation &d);

/// True when every cell probability is >= -tolerance.
bool is_nonnegative(const BinaryCorrelation &d, double tolerance = 1e-12);

/// A quantum correlation split into a local part (weight p_local) and a
/// no-signaling nonlocal part (weight 1 - p_local):
///
///   P_Q = p_local * local_part + (1 - p_local) * nonlocal_part
struct Epr2Decomposition {
    double p_local;
    BinaryCorrelation local_part;
    BinaryCorrelation nonlocal_part;
};

}  // namespace boxsim
