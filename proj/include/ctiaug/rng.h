//
// Copyright 2026 The ctiaug Authors
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
//

// Seeded random helpers whose output is identical on every platform.
// std::uniform_int_distribution and friends are implementation-defined, so
// all sampling in the project goes through these instead.

#ifndef CTIAUG_RNG_H_
#define CTIAUG_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace ctiaug {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a. Stable across runs and builds, used to derive sub-seeds and
// for feature hashing.
inline uint64_t Fnv1a64(std::string_view data,
                        uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// Derives an independent seed from a base seed and a label.
inline uint64_t DeriveSeed(uint64_t seed, std::string_view label) {
  uint64_t h = Fnv1a64(label);
  h ^= seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace ctiaug

#endif  // CTIAUG_RNG_H_
