// Copyright 2026 The GeoDP Authors
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
#include <random>

namespace geodp {

// A reproducible stream position. Two states with the same seed and distinct
// counters give independent streams.
struct RngState {
  uint64_t seed = 0;
  uint64_t counter = 0;
};

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive 64-bit mix of two words.
inline uint64_t HashCombine(uint64_t a, uint64_t b) {
  return SplitMix64(a ^ SplitMix64(b + 0x632be59bd9b4e019ULL));
}

// Owned random source. Not shared across threads; each caller constructs its
// own from an RngState.
class Rng {
 public:
  explicit Rng(RngState state) : state_(state) {
    const uint64_t a = SplitMix64(state.seed);
    const uint64_t b = SplitMix64(a ^ state.counter);
    std::seed_seq seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                      static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  double Normal() { return normal_(engine_); }

  // Uniform on [0, 1).
  double Uniform() { return uniform_(engine_); }

  // Uniform on (0, 1); safe to feed into inverse CDFs and logarithms.
  double UniformOpen() {
    double u = 0.0;
    do {
      u = uniform_(engine_);
    } while (u <= 0.0);
    return u;
  }

  double Gamma(double shape, double scale) {
    return std::gamma_distribution<double>(shape, scale)(engine_);
  }

  const RngState& state() const { return state_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  RngState state_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace geodp
