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
#include <vector>

#include "medop/geometry.hpp"

namespace medop {

inline constexpr double kDefaultExposureStep = 0.05;

/// Attenuated-disk sensor field with uniform constants for every node.
/// Each node contributes min(cap, alpha / d^mu) at distance d.
class SensorField {
public:
    SensorField() = default;
    /// Throws std::invalid_argument unless alpha, mu and cap are positive and
    /// every node coordinate is finite.
    SensorField(std::vector<Point> nodes, double alpha, double mu, double cap);

    [[nodiscard]] const std::vector<Point>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double cap() const noexcept { return cap_; }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }

    /// Same constants, no nodes.
    [[nodiscard]] SensorField without_nodes() const;

    friend bool operator==(const SensorField&, const SensorField&) = default;

private:
    std::vector<Point> nodes_;
    double alpha_ = 50.0;
    double mu_ = 2.0;
    double cap_ = 30.0;
};

/// Energy sensed by one node at `x`. Saturates at cap, including at the node itself.
[[nodiscard]] double sensing_value(const SensorField& field, std::size_t node_index, const Point& x);

/// Sum of sensing_value over all nodes.
[[nodiscard]] double field_intensity(const SensorField& field, const Point& x) noexcept;

/// Integral of field intensity over arc length along the path, by composite
/// Composite Simpson on each arc and straight piece with panel width at most `step`.
/// Throws std::invalid_argument if step is not positive.
[[nodiscard]] double exposure(const SensorField& field, const CompositePath& path,
                              double step = kDefaultExposureStep);
[[nodiscard]] double exposure(const SensorField& field, const DubinsPath& curve,
                              double step = kDefaultExposureStep);

}  // namespace medop
