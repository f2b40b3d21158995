// Copyright 2026 The adcue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADCUE_NN_RNG_H_
#define ADCUE_NN_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace adcue::nn {

// Deterministic, splittable random source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard <random> distributions are not portable across
// library implementations, so every variate below is derived from the raw
// 64-bit output by hand. Child streams are seeded by hashing the parent
// seed with a stream key through SplitMix64, which keeps them independent
// of the order in which they are created.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t UniformInt(uint64_t n);

  // Standard normal variate (Box-Muller, one value per call).
  double Normal();

  // Triangular variate on (-1, 1): difference of two uniforms.
  double Triangular() { return Uniform() - Uniform(); }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Independent child stream keyed by `stream`.
  SeededRng Split(uint64_t stream) const { return SeededRng(Mix({seed_, stream})); }
  SeededRng Split(std::string_view stream) const {
    return SeededRng(Mix({seed_, Hash(stream)}));
  }

  static uint64_t SplitMix64(uint64_t x);
  static uint64_t Mix(std::initializer_list<uint64_t> keys);
  // FNV-1a, used to turn identifiers into stream keys.
  static uint64_t Hash(std::string_view text);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace adcue::nn

#endif  // ADCUE_NN_RNG_H_
