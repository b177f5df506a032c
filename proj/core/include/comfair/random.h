// Copyright 2026 The ComFair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMFAIR_RANDOM_H_
#define COMFAIR_RANDOM_H_

#include <cstdint>
#include <random>

namespace comfair {

using Rng = std::mt19937_64;

// Independent generator for (seed, stream). Streams let parallel workers and
// per-walk samplers draw reproducibly regardless of scheduling.
inline Rng MakeRng(uint64_t seed, uint64_t stream = 0) {
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream),
                    static_cast<uint32_t>(stream >> 32), 0x636f6d66u};
  return Rng(seq);
}

// Uniform double in [0, 1).
inline double UniformUnit(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace comfair

#endif  // COMFAIR_RANDOM_H_
