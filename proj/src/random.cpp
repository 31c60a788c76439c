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

#include "boxsim/random.h"

#include <cmath>

namespace boxsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t &state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

SharedRandomness::SharedRandomness(std::uint64_t seed) {
    for (auto &word : state_) {
        word = splitmix64(seed);
    }
}

std::uint64_t SharedRandomness::uniform_u64() {
    // xoshiro256**.
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SharedRandomness::uniform_scalar() {
    return static_cast<double>(uniform_u64() >> 11) * 0x1.0p-53;
}

int SharedRandomness::uniform_bit() {
    return static_cast<int>(uniform_u64() >> 63);
}

BlochVector SharedRandomness::uniform_unit_vector() {
    double z = 2.0 * uniform_scalar() - 1.0;
    double phi = kTwoPi * uniform_scalar();
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return BlochVector{r * std::cos(phi), r * std::sin(phi), z};
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    // SplitMix64 jumps in O(1): advance the counter index steps, emit once.
    std::uint64_t state = seed + index * 0x9E3779B97F4A7C15ULL;
    return splitmix64(state);
}

}  // namespace boxsim
