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

#include <utility>

#include "boxsim/bloch.h"
#include "boxsim/correlation.h"
#include "boxsim/random.h"

namespace boxsim {

/// Bit/sign convention, fixed globally: bit 0 <-> outcome +1, bit 1 <-> -1.
int sign_from_bit(int bit);
int bit_from_sign(int outcome);

/// 0 if w >= 0, else 1 (the bit form of the sign, under the global convention).
int sgnbit(double w);

/// Each box is split into a shared draw plus two ends. The draw is the
/// box's internal randomness, sampled once per use; each party's end then
/// computes that party's output from its own input and the draw. Only the
/// box relation itself (evaluated on Bob's side here, by convention) sees
/// both inputs — which is exactly what makes Alice's outputs bit-identical
/// under any change of Bob's inputs, the replayable half of no-signaling.
///
/// Alice's output is always the fresh shared bit itself, so both ends are
/// locally uniform no matter the inputs.

/// PR-box: outputs satisfy a ^ b = x*y for input bits x, y.
struct PrBoxDraw {
    int shared_bit;

    static PrBoxDraw sample(SharedRandomness &shared);
    int alice_end(int x) const;
    int bob_end(int x, int y) const;
};

/// Millionaire box: inputs x, y in [0, 1]; outputs satisfy
/// a ^ b = [x <= y] with the convention [X] = 0 when X is true.
/// Ties resolve as "<=" true (a ^ b = 0). Inputs outside [0, 1] are rejected.
struct MBoxDraw {
    int shared_bit;

    static MBoxDraw sample(SharedRandomness &shared);
    int alice_end(double x) const;
    int bob_end(double x, double y) const;
};

/// Scalar-product box: for unit vectors u, v the ±1 outputs have zero
/// marginals and E[alpha*beta] = u·v. Built from two shared uniform unit
/// vectors and exactly one PR-box use:
///   x = sgnbit(u·λ₁) ^ sgnbit(u·λ₂)
///   y = sgnbit(v·(λ₁+λ₂)) ^ sgnbit(v·(λ₁−λ₂))
///   alpha-bit = p ^ sgnbit(u·λ₁),  beta-bit = q ^ sgnbit(v·(λ₁+λ₂))
/// where (p, q) are the PR outputs. The sign of the contract (E = +u·v, not
/// −u·v) is pinned by the Monte Carlo oracle test, not assumed.
struct CgmpBoxDraw {
    BlochVector lambda1;
    BlochVector lambda2;
    PrBoxDraw pr;

    static CgmpBoxDraw sample(SharedRandomness &shared);
    int alice_end(const BlochVector &u) const;                         // ±1
    int bob_end(const BlochVector &u, const BlochVector &v) const;     // ±1
};

/// Whole-box conveniences: sample one draw, evaluate both ends.
std::pair<int, int> pr_box(SharedRandomness &shared, int x, int y);
std::pair<int, int> m_box(SharedRandomness &shared, double x, double y);
std::pair<int, int> cgmp_box(SharedRandomness &shared, const BlochVector &u, const BlochVector &v);

/// Test oracle, not a no-signaling-architecture resource: samples the exact
/// joint of a nonnegative correlation by inverse CDF over the four outcomes
/// in the order (++, +−, −+, −−), consuming one uniform scalar. With that
/// order Alice's outcome is [u < (1 + M_A)/2], so even the oracle is
/// replay-exact on Alice's side. Rejects correlations with a negative cell.
std::pair<int, int> oracle_box(SharedRandomness &shared, const BinaryCorrelation &d);

}  // namespace boxsim
