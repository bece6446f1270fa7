// Copyright 2026 The Slingshot Authors
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

#ifndef SLINGSHOT_RNG_H_
#define SLINGSHOT_RNG_H_

#include <cmath>
#include <cstdint>

namespace slingshot {

// SplitMix64 finalizer. Bijective on uint64, so distinct inputs give
// distinct outputs.
inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic, platform-independent random stream. std::uniform_real and
// std::normal_distribution are implementation-defined, so all variates are
// generated explicitly: 53-bit uniforms from a SplitMix64 counter stream,
// Gaussians via Box-Muller (one variate per call; the sine branch is
// discarded to keep the stream order trivial to document).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1).
  double NextUniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1].
  double NextUniformPositive() {
    return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [-1, 1].
  double NextUniformSymmetric() { return 2.0 * NextUniform() - 1.0; }

  // Standard normal, Box-Muller cosine branch.
  double NextGaussian() {
    double u1 = NextUniformPositive();
    double u2 = NextUniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  uint64_t state_;
};

}  // namespace slingshot

#endif  // SLINGSHOT_RNG_H_
