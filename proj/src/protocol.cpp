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

#include "boxsim/protocol.h"

#include <algorithm>

namespace boxsim {

namespace {

enum class PipelineKind {
    preliminary,
    main_model,
    broken,  // main_model with Alice's flip threshold leaking b_z
};

RoundResult run_pipeline(const StateParameter &state,
                         const BlochVector &a,
                         const BlochVector &b,
                         SharedRandomness &shared,
                         PipelineKind kind) {
    auto [ar, neg_a] = hemisphere_reduce(a);
    auto [br, neg_b] = hemisphere_reduce(b);

    // Box inputs and flip thresholds are fixed by the model before any draw.
    BlochVector u1, v1, u2, v2;
    double f_a, f_b;
    if (kind == PipelineKind::preliminary) {
        u1 = hardy_step_back(state, ar, Side::alice);
        v1 = br;
        u2 = ar;
        v2 = hardy_step_back(state, br, Side::bob);
        f_a = state.cos2theta() * ar.z;
        f_b = state.cos2theta() * br.z;
    } else {
        double threshold = slice_threshold(state);
        bool a_inside = ar.z <= threshold;
        bool b_inside = br.z <= threshold;
        u1 = a_inside ? ar : epr2_step_back_alice(state, ar);
        v1 = bob_reflection(br);
        u2 = ar;
        v2 = b_inside ? bob_reflection(br) : hardy_step_back(state, br, Side::bob);
        f_a = nonlocal_marginal(state, kind == PipelineKind::broken ? br.z : ar.z);
        f_b = nonlocal_marginal(state, br.z);
    }

    CgmpBoxDraw cgmp1 = CgmpBoxDraw::sample(shared);
    int alpha1 = bit_from_sign(cgmp1.alice_end(u1));
    int beta1 = bit_from_sign(cgmp1.bob_end(u1, v1));
    CgmpBoxDraw cgmp2 = CgmpBoxDraw::sample(shared);
    int alpha2 = bit_from_sign(cgmp2.alice_end(u2));
    int beta2 = bit_from_sign(cgmp2.bob_end(u2, v2));

    // Unit-vector normalization can overshoot 1 by an ulp; the M-box domain
    // check is strict.
    double x_m = std::min(ar.z, 1.0);
    double y_m = std::min(br.z, 1.0);
    MBoxDraw m = MBoxDraw::sample(shared);
    int a_m = m.alice_end(x_m);
    int b_m = m.bob_end(x_m, y_m);

    PrBoxDraw pr3 = PrBoxDraw::sample(shared);
    int a3 = pr3.alice_end(a_m);
    int b3 = pr3.bob_end(a_m, beta1 ^ beta2);
    PrBoxDraw pr4 = PrBoxDraw::sample(shared);
    int a4 = pr4.alice_end(alpha1 ^ alpha2);
    int b4 = pr4.bob_end(alpha1 ^ alpha2, b_m);

    int alice_bit = (a_m & (alpha1 ^ alpha2)) ^ alpha2 ^ a3 ^ a4;
    int bob_bit = (b_m & (beta1 ^ beta2)) ^ beta2 ^ b3 ^ b4;
    int alpha = sign_from_bit(alice_bit);
    int beta = sign_from_bit(bob_bit);

    double lambda = shared.uniform_scalar();
    bool flip_a = lambda < f_a;
    bool flip_b = lambda < f_b;
    if (flip_a && alpha == -1) {
        alpha = +1;
    }
    if (flip_b && beta == -1) {
        beta = +1;
    }

    if (neg_a) {
        alpha = -alpha;
    }
    if (neg_b) {
        beta = -beta;
    }

    ProtocolTranscript transcript{
        alpha1, beta1, alpha2, beta2, a_m, b_m, a3, b3, a4, b4,
        flip_a, flip_b, (a_m ^ b_m) ? 1 : 2,
    };
    // 4 PR relations: one inside each CGMP box, plus PR 3 and PR 4.
    return RoundResult{alpha, beta, true, 4, 1, transcript};
}

}  // namespace

std::pair<BlochVector, bool> hemisphere_reduce(const BlochVector &v) {
    if (v.z >= 0.0) {
        return {v, false};
    }
    return {-v, true};
}

RoundResult simulate_preliminary(const StateParameter &state,
                                 const BlochVector &a,
                                 const BlochVector &b,
                                 SharedRandomness &shared) {
    return run_pipeline(state, a, b, shared, PipelineKind::preliminary);
}

RoundResult simulate_epr2_nonlocal(const StateParameter &state,
                                   const BlochVector &a,
                                   const BlochVector &b,
                                   SharedRandomness &shared) {
    return run_pipeline(state, a, b, shared, PipelineKind::main_model);
}

RoundResult simulate_epr2_full(const StateParameter &state,
                               const BlochVector &a,
                               const BlochVector &b,
                               SharedRandomness &shared) {
    double coin = shared.uniform_scalar();
    if (coin < 1.0 - state.sin2theta()) {
        // Local branch: independent outputs with means f(a_z), f(b_z),
        // no box touched. f is odd, so no hemisphere reduction is needed.
        double u_a = shared.uniform_scalar();
        double u_b = shared.uniform_scalar();
        int alpha = u_a < 0.5 * (1.0 + local_marginal(state, a.z)) ? +1 : -1;
        int beta = u_b < 0.5 * (1.0 + local_marginal(state, b.z)) ? +1 : -1;
        return RoundResult{alpha, beta, false, 0, 0, std::nullopt};
    }
    return simulate_epr2_nonlocal(state, a, b, shared);
}

RoundResult simulate_singlet(const BlochVector &a,
                             const BlochVector &b,
                             SharedRandomness &shared) {
    BlochVector b_adapted{b.x, -b.y, b.z};
    auto [alpha, beta] = cgmp_box(shared, a, b_adapted);
    return RoundResult{alpha, beta, true, 1, 0, std::nullopt};
}

RoundResult simulate_broken_signaling(const StateParameter &state,
                                      const BlochVector &a,
                                      const BlochVector &b,
                                      SharedRandomness &shared) {
    return run_pipeline(state, a, b, shared, PipelineKind::broken);
}

}  // namespace boxsim
