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

#include <cstdint>

namespace boxsim {

// Version of the protocol wiring and randomness-consumption contract.
// Outputs produced under the same version, seed, and partition rule are
// byte-identical.
inline constexpr const char *kSpecVersion = "1.0";

// Estimation is partitioned into fixed-size chunks of rounds; chunk j runs on
// an independent stream seeded with child_seed(seed, j). Merging chunk counts
// is associative, so results do not depend on the worker count.
inline constexpr const char *kPartitionRule =
    "splitmix64-child/xoshiro256ss/chunk=65536";

inline constexpr std::uint64_t kChunkRounds = 65536;

inline constexpr std::uint64_t kDefaultSeed = 0;

}  // namespace boxsim
