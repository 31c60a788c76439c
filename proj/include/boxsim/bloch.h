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

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// A unit 3-vector on the Bloch sphere (a von Neumann measurement setting).
struct BlochVector {
    double x;
    double y;
    double z;

    /// Builds a unit vector from arbitrary components, renormalizing.
    /// Throws std::invalid_argument if the norm is below 1e-6.
    static BlochVector normalized(double x, double y, double z);

    /// Wraps components that are already unit-norm (results of analytic
    /// formulas). Throws std::logic_error if |x^2+y^2+z^2 - 1| > 1e-9.
    static BlochVector from_unit(double x, double y, double z);

    double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;

    BlochVector operator-() const { return BlochVector{-x, -y, -z}; }
    bool operator==(const BlochVector &o) const = default;
};

inline const BlochVector kXAxis{1.0, 0.0, 0.0};
inline const BlochVector kYAxis{0.0, 1.0, 0.0};
inline const BlochVector kZAxis{0.0, 0.0, 1.0};

/// The entanglement parameter theta of a pure two-qubit state, restricted to
/// (0, pi/4], with cached c = cos(2 theta) and s = sin(2 theta).
///
/// theta values so close to pi/4 that sin(2 theta) rounds to 1.0 are treated
/// as maximal: there local_marginal is identically zero and the slice
/// threshold collapses to 0 (see core.h).
class StateParameter {
  public:
    /// Throws std::invalid_argument unless 0 < theta <= pi/4.
    explicit StateParameter(double theta);

    double theta() const { return theta_; }
    double cos2theta() const { return c_; }
    double sin2theta() const { return s_; }

    /// True when sin(2 theta) == 1 in double precision.
    bool maximal() const { return s_ == 1.0; }

  private:
    double theta_;
    double c_;
    double s_;
};

}  // namespace boxsim
