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

#include "boxsim/correlation.h"

#include <algorithm>
#include <stdexcept>

namespace boxsim {

double distribution_probability(const BinaryCorrelation &d, int alpha, int beta) {
    if ((alpha != 1 && alpha != -1) || (beta != 1 && beta != -1)) {
        throw std::invalid_argument("distribution_probability: outcomes must be +1 or -1");
    }
    return 0.25 * (1.0 + alpha * d.alice_marginal + beta * d.bob_marginal +
                   alpha * beta * d.correlator);
}

double min_probability(const BinaryCorrelation &d) {
    double lo = 1.0;
    for (int alpha : {+1, -1}) {
        for (int beta : {+1, -1}) {
            lo = std::min(lo, distribution_probability(d, alpha, beta));
        }
    }
    return lo;
}

bool is_nonnegative(const BinaryCorrelation &d, double tolerance) {
    return min_probability(d) >= -tolerance;
}

}  // namespace boxsim
