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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "medop/chromosome.hpp"
#include "medop/random.hpp"

namespace medop {

/// True iff `a` collects at least as much reward with at most as much
/// exposure, and is strictly better in one of the two. Length is ignored.
[[nodiscard]] bool dominates(const Fitness& a, const Fitness& b) noexcept;

using Front = std::vector<std::size_t>;

/// Partitions indices into successive non-dominated layers. Members of each
/// front are listed in ascending index order.
[[nodiscard]] std::vector<Front> non_dominated_sort(std::span<const Fitness> points);

/// Fronts from non_dominated_sort, with every repeat of an already-listed
/// (reward, exposure) pair moved to an extra layer right after its front.
/// Survivor selection fills from these layers, so repeats only survive when
/// there is room for them.
[[nodiscard]] std::vector<Front> survival_layers(std::span<const Fitness> points);

struct HypervolumeReference {
    double reward = 0.0;
    double exposure = 0.0;
};

/// Area dominated by the points and bounded by the reference, in
/// (reward, exposure) space. Throws std::invalid_argument if some point does
/// not dominate the reference.
[[nodiscard]] double hypervolume_2d(std::span<const Fitness> points, HypervolumeReference reference);

struct Range {
    double min = 0.0;
    double max = 0.0;
};

struct Extremes {
    Range reward;
    Range exposure;
    Range length;
};

/// Component-wise bounds. Throws std::invalid_argument on an empty input.
[[nodiscard]] Extremes extremes(std::span<const Fitness> points);

/// NSGA-II crowding distance of each member within `members`; boundary
/// members get +infinity. Result is parallel to `members`.
[[nodiscard]] std::vector<double> crowding_distance(std::span<const Fitness> points,
                                                    std::span<const std::size_t> members);

/// Uniform lattice on the 2-objective simplex with the given number of
/// divisions (divisions + 1 points).
[[nodiscard]] std::vector<std::array<double, 2>> reference_directions(std::size_t divisions);

/// Outcome of survivor selection. `rank[k]` and `diversity[k]` describe
/// `indices[k]`; a larger diversity value is preferred in tournaments.
struct Survivors {
    std::vector<std::size_t> indices;
    std::vector<std::size_t> rank;
    std::vector<double> diversity;
};

/// Reference-point (NSGA-III) survivor selection of `count` points.
/// Objectives are normalised by the ideal and nadir points of the first
/// front; the lattice has count - 1 divisions. Diversity is the negated niche
/// count of the associated reference direction.
[[nodiscard]] Survivors select_by_reference_points(std::span<const Fitness> points, std::size_t count, Rng& rng);

/// Crowding-distance (NSGA-II) survivor selection. Deterministic; ties keep
/// the lower index. Diversity is the crowding distance inside the layer.
[[nodiscard]] Survivors select_by_crowding(std::span<const Fitness> points, std::size_t count);

struct Solution {
    Chromosome chromosome;
    Fitness fitness;
};

/// Mutually non-dominated solutions sorted by ascending reward.
struct ParetoFront {
    std::vector<Solution> solutions;

    [[nodiscard]] std::vector<Fitness> fitnesses() const;
};

[[nodiscard]] Extremes extremes(const ParetoFront& front);

}  // namespace medop
