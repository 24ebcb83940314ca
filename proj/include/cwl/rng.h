// Copyright 2026 The cwl Authors
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

#ifndef CWL_RNG_H_
#define CWL_RNG_H_

#include <cmath>
#include <cstdint>
#include <limits>

namespace cwl {

// Finalizer from SplitMix64. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combines a running key with one more word. Order sensitive.
constexpr uint64_t HashCombine(uint64_t key, uint64_t word) {
  return Mix64(key ^ Mix64(word + 0x632be59bd9b4e019ULL));
}

// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream tags for the stateless draws made at a node.
enum class StreamTag : uint64_t {
  kDesignated = 1,
  kFlip = 2,
  kPvCost = 3,
  kHeuristic = 4,
};

// Uniform variate for (node key, tag, index). Stateless and order independent.
constexpr double StreamUniform(uint64_t node_key, StreamTag tag,
                               uint64_t index = 0) {
  return ToUnit(
      HashCombine(HashCombine(node_key, static_cast<uint64_t>(tag)), index));
}

// Small stateful generator (SplitMix64). Satisfies UniformRandomBitGenerator,
// and its output is identical on every platform.
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double Uniform() { return ToUnit((*this)()); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n) {
    // Lemire's multiply-shift; the bias is < n / 2^64 and irrelevant here.
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

  // Standard normal via Box-Muller. Uses two uniforms per call.
  double Normal() {
    double u1 = Uniform();
    double u2 = Uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  uint64_t state_;
};

}  // namespace cwl

#endif  // CWL_RNG_H_
