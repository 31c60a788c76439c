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

#include <optional>
#include <utility>

#include "boxsim/boxes.h"
#include "boxsim/core.h"
#include "boxsim/random.h"

namespace boxsim {

/// Everything the box pipeline produced in one round, for auditing: the
/// per-sample box relations, the branch actually selected, and the flip
/// threshold events. All box outputs are recorded as bits (0 <-> +1).
struct ProtocolTranscript {
    int alpha1, beta1;  // CGMP 1 outputs
    int alpha2, beta2;  // CGMP 2 outputs
    int a_m, b_m;       // M-box outputs; a_m ^ b_m = [a_z <= b_z]
    int a3, b3;         // PR 3: inputs (a_m, beta1 ^ beta2)
    int a4, b4;         // PR 4: inputs (alpha1 ^ alpha2, b_m)
    bool flip_a, flip_b;  // threshold events Lambda < f (outcome may already be +1)
    int branch;           // 1 if a_z > b_z (uses CGMP 1), else 2
};

struct RoundResult {
    int alpha;  // ±1
    int beta;   // ±1
    bool used_nonlocal;
    int pr_box_uses;  // counts the PR uses inside the CGMP boxes too
    int m_box_uses;
    std::optional<ProtocolTranscript> transcript;  // box pipeline rounds only
};

/// Reflects a setting into the upper hemisphere: returns (v, false) when
/// v_z >= 0, else (-v, true); the caller negates that party's final outcome
/// when the flag is set. Valid because the target correlation satisfies
/// P(-alpha, beta | -a, b) = P(alpha, beta | a, b) and its Bob mirror.
std::pair<BlochVector, bool> hemisphere_reduce(const BlochVector &v);

/// One round of the preliminary model. Normative order of operations:
///   1. hemisphere-reduce both settings;
///   2. CGMP 1 with inputs (hardy_step_back(a), b);
///   3. CGMP 2 with inputs (a, hardy_step_back(b));
///   4. M-box on (a_z, b_z);
///   5. PR 3 on (a_m, beta1^beta2) and PR 4 on (alpha1^alpha2, b_m);
///   6. combine: Alice bit = a_m(alpha1^alpha2) ^ alpha2 ^ a3 ^ a4,
///               Bob bit   = b_m(beta1^beta2) ^ beta2 ^ b3 ^ b4;
///   7. map bits to ±1;
///   8. correlated flips toward +1 with one shared Lambda: Alice flips a -1
///      iff Lambda < c*a_z, Bob iff Lambda < c*b_z;
///   9. undo the hemisphere reduction.
/// Over many rounds the joint equals quantum_correlation(state, a, b).
RoundResult simulate_preliminary(const StateParameter &state,
                                 const BlochVector &a,
                                 const BlochVector &b,
                                 SharedRandomness &shared);

/// One round of the nonlocal part of the main model. Same pipeline as
/// simulate_preliminary except the CGMP inputs depend on slice membership
/// (|z| <= slice_threshold, after hemisphere reduction):
///   CGMP 1: Alice inputs a inside the slice, epr2_step_back_alice(a)
///           outside; Bob inputs bob_reflection(b) always;
///   CGMP 2: Alice inputs a always; Bob inputs bob_reflection(b) inside,
///           hardy_step_back(b) outside;
/// and step 8 flips with thresholds F(a_z), F(b_z) (nonlocal_marginal).
/// Over many rounds the joint equals epr2_decompose(...).nonlocal_part.
RoundResult simulate_epr2_nonlocal(const StateParameter &state,
                                   const BlochVector &a,
                                   const BlochVector &b,
                                   SharedRandomness &shared);

/// One round of the full main model: a shared coin picks the local branch
/// with probability p_local = 1 - s; there Alice and Bob output ±1
/// independently with means f(a_z), f(b_z) from two further shared scalars,
/// touching no boxes. Otherwise runs simulate_epr2_nonlocal. Stream order:
/// branch coin -> [nonlocal: the full pipeline] / [local: Alice scalar,
/// Bob scalar]. Over many rounds the joint equals the quantum target and
/// used_nonlocal has frequency s.
RoundResult simulate_epr2_full(const StateParameter &state,
                               const BlochVector &a,
                               const BlochVector &b,
                               SharedRandomness &shared);

/// The maximally entangled special case: a single scalar-product box with
/// inputs (a, (b_x, -b_y, b_z)) reproduces the theta = pi/4 correlation
/// using one PR-box and no M-box.
RoundResult simulate_singlet(const BlochVector &a,
                             const BlochVector &b,
                             SharedRandomness &shared);

/// Deliberately broken test fixture: identical to simulate_epr2_nonlocal
/// except Alice's flip threshold reads Bob's reduced z — a one-line
/// signaling leak the no-signaling tests must catch. Not a model of anything.
RoundResult simulate_broken_signaling(const StateParameter &state,
                                      const BlochVector &a,
                                      const BlochVector &b,
                                      SharedRandomness &shared);

}  // namespace boxsim
