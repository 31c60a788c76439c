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

#include "boxsim/boxes.h"

#include <stdexcept>

namespace boxsim {

namespace {

void check_unit_interval(double value, const char *who) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(who) + " input outside [0, 1]");
    }
}

}  // namespace

int sign_from_bit(int bit) {
    return 1 - 2 * bit;
}

int bit_from_sign(int outcome) {
    return (1 - outcome) / 2;
}

int sgnbit(double w) {
    return w >= 0.0 ? 0 : 1;
}

PrBoxDraw PrBoxDraw::sample(SharedRandomness &shared) {
    return PrBoxDraw{shared.uniform_bit()};
}

int PrBoxDraw::alice_end(int) const {
    return shared_bit;
}

int PrBoxDraw::bob_end(int x, int y) const {
    return shared_bit ^ (x & y);
}

MBoxDraw MBoxDraw::sample(SharedRandomness &shared) {
    return MBoxDraw{shared.uniform_bit()};
}

int MBoxDraw::alice_end(double x) const {
    check_unit_interval(x, "m_box alice");
    return shared_bit;
}

int MBoxDraw::bob_end(double x, double y) const {
    check_unit_interval(x, "m_box alice");
    check_unit_interval(y, "m_box bob");
    return shared_bit ^ (x <= y ? 0 : 1);
}

CgmpBoxDraw CgmpBoxDraw::sample(SharedRandomness &shared) {
    BlochVector l1 = shared.uniform_unit_vector();
    BlochVector l2 = shared.uniform_unit_vector();
    return CgmpBoxDraw{l1, l2, PrBoxDraw::sample(shared)};
}

int CgmpBoxDraw::alice_end(const BlochVector &u) const {
    int x = sgnbit(u.dot(lambda1)) ^ sgnbit(u.dot(lambda2));
    int alpha_bit = pr.alice_end(x) ^ sgnbit(u.dot(lambda1));
    return sign_from_bit(alpha_bit);
}

int CgmpBoxDraw::bob_end(const BlochVector &u, const BlochVector &v) const {
    int x = sgnbit(u.dot(lambda1)) ^ sgnbit(u.dot(lambda2));
    double w_plus = v.dot(lambda1) + v.dot(lambda2);
    double w_minus = v.dot(lambda1) - v.dot(lambda2);
    int y = sgnbit(w_plus) ^ sgnbit(w_minus);
    int beta_bit = pr.bob_end(x, y) ^ sgnbit(w_plus);
    return sign_from_bit(beta_bit);
}

std::pair<int, int> pr_box(SharedRandomness &shared, int x, int y) {
    PrBoxDraw draw = PrBoxDraw::sample(shared);
    return {draw.alice_end(x), draw.bob_end(x, y)};
}

std::pair<int, int> m_box(SharedRandomness &shared, double x, double y) {
    MBoxDraw draw = MBoxDraw::sample(shared);
    return {draw.alice_end(x), draw.bob_end(x, y)};
}

std::pair<int, int> cgmp_box(SharedRandomness &shared, const BlochVector &u, const BlochVector &v) {
    CgmpBoxDraw draw = CgmpBoxDraw::sample(shared);
    return {draw.alice_end(u), draw.bob_end(u, v)};
}

std::pair<int, int> oracle_box(SharedRandomness &shared, const BinaryCorrelation &d) {
    if (!is_nonnegative(d)) {
        throw std::invalid_argument("oracle_box requires a nonnegative correlation");
    }
    double u = shared.uniform_scalar();
    // Inverse CDF in the order ++, +-, -+, --. The alpha row boundary is
    // computed from the marginal alone, not as p_pp + p_pm, so Alice's
    // outcome is bit-for-bit a function of (u, alice_marginal) only.
    double row = 0.5 * (1.0 + d.alice_marginal);
    if (u < row) {
        return {+1, u < distribution_probability(d, +1, +1) ? +1 : -1};
    }
    return {-1, u < row + distribution_probability(d, -1, +1) ? +1 : -1};
}

}  // namespace boxsim
