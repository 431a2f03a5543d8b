// Copyright 2026 The wavestat Authors
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
#include <cmath>
#include <cstdint>
#include <span>

#include "numeric.hpp"

namespace wavestat::ensemble {

/// Philox4x32-10 block function (Salmon et al., SC'11).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent seed for a named purpose derived from a user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return splitmix64(seed ^ splitmix64(tag));
}

/// Random stream addressed by (seed, index, attempt). The block counter
/// advances within the stream; nothing else is stateful, so any substream
/// can be regenerated in isolation.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        index_(index),
        attempt_(attempt) {}

  /// Two uniforms in [0, 1) with 53-bit resolution.
  std::array<double, 2> next_uniform_pair() noexcept {
    const auto r = philox4x32({block_++, attempt_, static_cast<std::uint32_t>(index_),
                               static_cast<std::uint32_t>(index_ >> 32)},
                              key_);
    return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
  }

  /// Fills `out` with independent standard normals (Box-Muller).
  void fill_normals(std::span<double> out) noexcept {
    std::size_t i = 0;
    while (i < out.size()) {
      const auto u = next_uniform_pair();
      const double radius = std::sqrt(-2.0 * std::log(1.0 - u[0]));
      const double angle = kTwoPi * u[1];
      out[i++] = radius * std::cos(angle);
      if (i < out.size()) out[i++] = radius * std::sin(angle);
    }
  }

 private:
  static double to_unit(std::uint32_t a, std::uint32_t b) noexcept {
    return (static_cast<double>(a >> 5) * 67108864.0 + static_cast<double>(b >> 6)) *
           (1.0 / 9007199254740992.0);
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t index_;
  std::uint32_t attempt_;
  std::uint32_t block_ = 0;
};

}  // namespace wavestat::ensemble
