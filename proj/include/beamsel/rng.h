// Copyright 2026 The Beamsel Authors.
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

// Portable, platform-independent random streams.
//
// Every stream is SplitMix64 (Steele, Lea and Flood) seeded with a 64-bit
// key; keys for independent substreams are derived by hashing coordinates
// into a parent seed. Uniforms use the top 53 bits; normals use the
// Box-Muller transform. None of this depends on the standard library's
// implementation-defined distributions, so streams are reproducible
// across compilers.

#ifndef BEAMSEL_RNG_H_
#define BEAMSEL_RNG_H_

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numbers>

namespace beamsel {

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr uint64_t HashCombine(uint64_t seed, uint64_t value) {
  return Mix64(seed + 0x9e3779b97f4a7c15ULL + Mix64(value));
}

inline uint64_t HashKey(uint64_t seed, std::initializer_list<uint64_t> parts) {
  uint64_t h = Mix64(seed);
  for (uint64_t p : parts) h = HashCombine(h, p);
  return h;
}

inline uint64_t DoubleBits(double x) {
  uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  return bits;
}

class SplitMixStream {
 public:
  explicit SplitMixStream(uint64_t key) : state_(key) {}

  uint64_t NextU64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix64(state_);
  }

  // Uniform on [0, 1).
  double NextUniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Standard normal by Box-Muller; uses two uniforms per call.
  double NextNormal() {
    const double u1 = 1.0 - NextUniform();  // (0, 1]
    const double u2 = NextUniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  uint64_t state_;
};

}  // namespace beamsel

#endif  // BEAMSEL_RNG_H_
