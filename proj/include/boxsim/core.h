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

#include "boxsim/bloch.h"
#include "boxsim/correlation.h"

// Pure analytic layer: the target correlation of a pure two-qubit state under
// von Neumann measurements, its local/nonlocal decomposition, the derived
// measurement settings fed to the boxes, and the composition law of correlated
// local flips. Everything here is deterministic and thread-safe.

namespace boxsim {

enum class Side { alice, bob };

/// Target distribution for settings a, b on the state with parameter theta:
///   M_A = c*a_z,  M_B = c*b_z,  C = a_z*b_z + s*(a_x*b_x - a_y*b_y).
BinaryCorrelation quantum_correlation(const StateParameter &state,
                                      const BlochVector &a, const BlochVector &b);

/// Composition law of correlated local flips (a shared Z-channel).
///
/// Starting from a zero-marginal distribution with correlator c0, each party
/// flips its output toward +1: Alice flips a -1 outcome iff Lambda < f_a, Bob
/// iff Lambda < f_b, with one shared uniform Lambda. The result has marginals
/// (f_a, f_b) and correlator min(f_a, f_b) + (1 - max(f_a, f_b)) * c0.
///
/// Negative f values flip toward -1 instead and compose mirror-symmetrically
/// (|f| enters the correlator, the marginal keeps its sign). Throws
/// std::invalid_argument for a strictly opposite-sign pair (f_a * f_b < 0),
/// which a single shared Lambda cannot realize, or for |f|, |c0| > 1.
BinaryCorrelation flip_compose(double f_a, double f_b, double c0);

/// Moves a setting one rung down the Hardy ladder:
///   (s*v_x, -s*v_y, v_z - c) / (1 - c*v_z),
/// which is unit-norm for any unit v. Both sides use the same map here; the
/// EPR-2 pipeline uses a different Alice-side map (epr2_step_back_alice).
BlochVector hardy_step_back(const StateParameter &state, const BlochVector &v, Side side);

/// Alice-side step-back used by the EPR-2 pipeline outside the slice:
///   (s*a_x, s*a_y, c - a_z) / (1 - a_z*c).  Unit-norm for unit a.
BlochVector epr2_step_back_alice(const StateParameter &state, const BlochVector &a);

/// Bob's reflected setting b' = (b_x, -b_y, -b_z). Involution.
BlochVector bob_reflection(const BlochVector &b);

/// Local-part marginal as a function of the setting's z-component:
///   f(z) = sgn(z) * min(1, c/(1-s) * |z|),
/// and identically 0 for maximal states (where c/(1-s) is singular).
double local_marginal(const StateParameter &state, double z);

/// Nonlocal-part marginal F(z) = (c*z - (1-s)*f(z)) / s. Odd, nondecreasing,
/// and exactly zero inside the slice |z| <= slice_threshold(state).
double nonlocal_marginal(const StateParameter &state, double z);

/// Nonlocal-part correlator
///   G(a, b) = a_x*b_x - a_y*b_y + (a_z*b_z - (1-s)*f(a_z)*f(b_z)) / s,
/// clamped to [-1, 1]. A value outside [-1 - 1e-9, 1 + 1e-9] indicates an
/// internal inconsistency and throws std::logic_error.
double nonlocal_correlator(const StateParameter &state, const BlochVector &a,
                           const BlochVector &b);

/// Half-width (1-s)/c of the equatorial Bloch-sphere slice on which the
/// nonlocal marginal vanishes; 0 for maximal states.
double slice_threshold(const StateParameter &state);

/// The local/nonlocal split with p_local = 1 - s,
///   local part    (f(a_z), f(b_z), f(a_z)*f(b_z))   [a product distribution]
///   nonlocal part (F(a_z), F(b_z), G(a, b)).
/// Mixing the parts with weight p_local reproduces quantum_correlation.
Epr2Decomposition epr2_decompose(const StateParameter &state, const BlochVector &a,
                                 const BlochVector &b);

}  // namespace boxsim
