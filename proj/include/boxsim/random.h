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

#include <array>
#include <cstdint>

#include "boxsim/bloch.h"

namespace boxsim {

/// The shared-randomness source held jointly by Alice and Bob.
///
/// A deterministic stream: xoshiro256** seeded from a 64-bit seed through
/// SplitMix64. The draw mapping is part of the reproducibility contract:
///
///   - uniform_u64:    one generator step.
///   - uniform_scalar: (u64 >> 11) * 2^-53, uniform in [0, 1).
///   - uniform_bit:    top bit of one u64.
///   - uniform_unit_vector: two scalars u, u' in draw order; z = 2u - 1,
///     phi = 2*pi*u', result (r cos phi, r sin phi, z) with r = sqrt(1 - z^2).
///     The polar angle is drawn by cosine inversion, so the distribution is
///     rotation-invariant.
///
/// Identical seeds yield identical streams. A stream is single-consumer;
/// parallel estimation derives one stream per chunk via child_seed.
class SharedRandomness {
  public:
    explicit SharedRandomness(std::uint64_t seed);

    std::uint64_t uniform_u64();
    double uniform_scalar();
    int uniform_bit();
    BlochVector uniform_unit_vector();

  private:
    std::array<std::uint64_t, 4> state_;
};

/// Derives the seed of substream `index` from a master seed: the
/// (index + 1)-th output of a SplitMix64 sequence started at `seed`.
/// This is the documented splitting rule for parallel workers, sweep rows,
/// and any other place that needs several independent streams from one seed.
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace boxsim
