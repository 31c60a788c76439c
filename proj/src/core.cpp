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

#include "boxsim/core.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace boxsim {

BinaryCorrelation quantum_correlation(const StateParameter &state, const BlochVector &a,
                                      const BlochVector &b) {
    const double c = state.cos2theta();
    const double s = state.sin2theta();
    return BinaryCorrelation{
        c * a.z,
        c * b.z,
        a.z * b.z + s * (a.x * b.x - a.y * b.y),
    };
}

BinaryCorrelation flip_compose(double f_a, double f_b, double c0) {
    if (std::abs(f_a) > 1.0 || std::abs(f_b) > 1.0 || std::abs(c0) > 1.0) {
        throw std::invalid_argument("flip_compose: arguments must lie in [-1, 1]");
    }
    if (f_a * f_b < 0.0) {
        throw std::invalid_argument(
            "flip_compose: opposite-sign flip pair is not realizable with one shared Lambda");
    }
    const double lo = std::min(std::abs(f_a), std::abs(f_b));
    const double hi = std::max(std::abs(f_a), std::abs(f_b));
    return BinaryCorrelation{f_a, f_b, lo + (1.0 - hi) * c0};
}

namespace {

// Shared guard for the two step-back maps. The denominator 1 - c*v_z is
// positive on the whole domain; it can only round to zero for c == 1.0 (theta
// below ~1e-8) with v_z == 1, where both maps have a +-z fixed point.
BlochVector step_back(double num_x, double num_y, double num_z, double denom,
                      const BlochVector &limit) {
    if (denom <= 0.0) {
        return limit;
    }
    return BlochVector::from_unit(num_x / denom, num_y / denom, num_z / denom);
}

}  // namespace

BlochVector hardy_step_back(const StateParameter &state, const BlochVector &v, Side /*side*/) {
    const double c = state.cos2theta();
    const double s = state.sin2theta();
    const double denom = 1.0 - c * v.z;
    return step_back(s * v.x, -s * v.y, v.z - c, denom, kZAxis);
}

BlochVector epr2_step_back_alice(const StateParameter &state, const BlochVector &a) {
    const double c = state.cos2theta();
    const double s = state.sin2theta();
    const double denom = 1.0 - a.z * c;
    return step_back(s * a.x, s * a.y, c - a.z, denom, -kZAxis);
}

BlochVector bob_reflection(const BlochVector &b) {
    return BlochVector{b.x, -b.y, -b.z};
}

double local_marginal(const StateParameter &state, double z) {
    if (state.maximal()) {
        return 0.0;
    }
    const double c = state.cos2theta();
    const double s = state.sin2theta();
    const double magnitude = std::min(1.0, c / (1.0 - s) * std::abs(z));
    return z < 0.0 ? -magnitude : (z > 0.0 ? magnitude : 0.0);
}

double nonlocal_marginal(const StateParameter &state, double z) {
    if (std::abs(z) <= slice_threshold(state)) {
        return 0.0;  // c*z - (1-s)*f(z) cancels identically inside the slice
    }
    const double c = state.cos2theta();
    const double s = state.sin2theta();
    return (c * z - (1.0 - s) * local_marginal(state, z)) / s;
}

double nonlocal_correlator(const StateParameter &state, const BlochVector &a,
                           const BlochVector &b) {
    const double s = state.sin2theta();
    const double fa = local_marginal(state, a.z);
    const double fb = local_marginal(state, b.z);
    const double g =
        a.x * b.x - a.y * b.y + (a.z * b.z - (1.0 - s) * fa * fb) / s;
    if (std::abs(g) > 1.0 + 1e-9) {
        throw std::logic_error("nonlocal_correlator: |G| = " + std::to_string(std::abs(g)) +
                               " exceeds 1 beyond tolerance");
    }
    return std::clamp(g, -1.0, 1.0);
}

double slice_threshold(const StateParameter &state) {
    if (state.maximal()) {
        return 0.0;
    }
    const double c = state.cos2theta();
    if (c <= 0.0) {
        return 0.0;
    }
    return std::min(1.0, (1.0 - state.sin2theta()) / c);
}

Epr2Decomposition epr2_decompose(const StateParameter &state, const BlochVector &a,
                                 const BlochVector &b) {
    const double s = state.sin2theta();
    const double fa = local_marginal(state, a.z);
    const double fb = local_marginal(state, b.z);
    return Epr2Decomposition{
        1.0 - s,
        BinaryCorrelation{fa, fb, fa * fb},
        BinaryCorrelation{nonlocal_marginal(state, a.z), nonlocal_marginal(state, b.z),
                          nonlocal_correlator(state, a, b)},
    };
}

}  // namespace boxsim
