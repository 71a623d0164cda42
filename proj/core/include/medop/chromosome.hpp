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

#include <vector>

namespace medop {

/// Key value marking a location that is not visited.
inline constexpr double kInactiveKey = -1.0;

/// Per-location gene: visit-order key, heading at the location, and the
/// turning radius of the curve that leaves it.
struct Gene {
    double key = kInactiveKey;
    double heading = 0.0;
    double radius = 1.0;

    [[nodiscard]] bool active() const noexcept { return key >= 0.0; }

    friend bool operator==(const Gene&, const Gene&) = default;
};

/// One gene per scenario location, indexed like Scenario::locations. The
/// start gene has key 0 and the goal gene key 1.
struct Chromosome {
    std::vector<Gene> genes;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// Objective values of a decoded tour: reward is maximised, exposure
/// minimised, length only constrained.
struct Fitness {
    double reward = 0.0;
    double exposure = 0.0;
    double length = 0.0;

    friend bool operator==(const Fitness&, const Fitness&) = default;
};

}  // namespace medop
