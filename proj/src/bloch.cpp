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

#include "boxsim/bloch.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace boxsim {

namespace {
constexpr double kMinNorm = 1e-6;
constexpr double kUnitTolerance = 1e-9;
}  // namespace

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

BlochVector BlochVector::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n >= kMinNorm)) {
        throw std::invalid_argument("BlochVector: norm " + std::to_string(n) +
                                    " below floor 1e-6");
    }
    return BlochVector{x / n, y / n, z / n};
}

BlochVector BlochVector::from_unit(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (!(std::abs(n2 - 1.0) <= kUnitTolerance)) {
        throw std::logic_error("BlochVector: expected unit vector, |v|^2 = " +
                               std::to_string(n2));
    }
    return BlochVector{x, y, z};
}

StateParameter::StateParameter(double theta) : theta_(theta) {
    if (!(theta > 0.0 && theta <= kPi / 4.0)) {
        throw std::invalid_argument("StateParameter: theta " + std::to_string(theta) +
                                    " outside (0, pi/4]");
    }
    c_ = std::cos(2.0 * theta);
    s_ = std::sin(2.0 * theta);
}

}  // namespace boxsim
