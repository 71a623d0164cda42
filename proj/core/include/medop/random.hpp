// Copyright 2026 The medop Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace medop {

// mt19937_64 is fully specified by the standard; the std distributions are
// not, so the helpers below keep sampled values identical across toolchains.
using Rng = std::mt19937_64;

/// Uniform in [0, 1) with 53 random bits.
[[nodiscard]] inline double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in the open interval (0, 1).
[[nodiscard]] inline double uniform_open01(Rng& rng) noexcept {
    double u = 0.0;
    do { u = uniform01(rng); } while (u == 0.0);
    return u;
}

/// Uniform in [lo, hi].
[[nodiscard]] inline double uniform(Rng& rng, double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n). n must be positive.
[[nodiscard]] inline std::size_t uniform_index(Rng& rng, std::size_t n) noexcept {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = 0;
    do { x = rng(); } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

[[nodiscard]] inline bool bernoulli(Rng& rng, double p) noexcept { return uniform01(rng) < p; }

}  // namespace medop
