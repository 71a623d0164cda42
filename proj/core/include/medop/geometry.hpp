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
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace medop {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2π).
[[nodiscard]] double normalize_angle(double theta) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

[[nodiscard]] double distance(const Point& a, const Point& b) noexcept;

/// Vehicle configuration in SE(2). The heading is kept in [0, 2π).
class Pose {
public:
    Pose() = default;
    Pose(double x, double y, double theta) noexcept : x_(x), y_(y), theta_(normalize_angle(theta)) {}
    Pose(const Point& p, double theta) noexcept : Pose(p.x, p.y, theta) {}

    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] Point position() const noexcept { return {x_, y_}; }

    friend bool operator==(const Pose&, const Pose&) = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
    double theta_ = 0.0;
};

enum class DubinsFamily { LSL, RSR, LSR, RSL, RLR, LRL };

inline constexpr std::array<DubinsFamily, 6> kDubinsFamilies = {
    DubinsFamily::LSL, DubinsFamily::RSR, DubinsFamily::LSR,
    DubinsFamily::RSL, DubinsFamily::RLR, DubinsFamily::LRL};

[[nodiscard]] std::string_view to_string(DubinsFamily family) noexcept;

enum class SegmentKind { Left, Straight, Right };

/// Segment kinds of a family, in travel order.
[[nodiscard]] std::array<SegmentKind, 3> segment_kinds(DubinsFamily family) noexcept;

/// One bounded-curvature curve between two poses.
///
/// `seg_lengths` holds the arc length in meters of each of the three
/// segments; for arcs this is the swept angle times `radius`.
struct DubinsPath {
    DubinsFamily family = DubinsFamily::LSL;
    double radius = 1.0;
    std::array<double, 3> seg_lengths{0.0, 0.0, 0.0};
    Pose start;
    double length = 0.0;

    [[nodiscard]] Pose end() const noexcept;
};

/// Builds the path of one family from the start pose and the three segment
/// lengths. The end pose is implied.
[[nodiscard]] DubinsPath make_dubins_path(DubinsFamily family, const Pose& start, double radius,
                                          const std::array<double, 3>& seg_lengths);

/// All feasible solutions of a single family between two poses. CCC families
/// can have two solutions; CSC families have at most one.
[[nodiscard]] std::vector<DubinsPath> dubins_family_solutions(const Pose& start, const Pose& end,
                                                              double radius, DubinsFamily family);

/// Shortest curve over the six families. Ties keep the earlier family in
/// `kDubinsFamilies`. Identical poses produce a zero-length path.
/// Throws std::invalid_argument if radius is not positive.
[[nodiscard]] DubinsPath dubins_shortest(const Pose& start, const Pose& end, double radius);

[[nodiscard]] inline double path_length(const DubinsPath& path) noexcept { return path.length; }

/// Pose at arc length `s`. Throws std::domain_error when s is outside [0, length].
[[nodiscard]] Pose sample(const DubinsPath& path, double s);

/// A tour: consecutive curves share their junction pose.
class CompositePath {
public:
    CompositePath() = default;
    explicit CompositePath(std::vector<DubinsPath> curves);

    [[nodiscard]] std::span<const DubinsPath> curves() const noexcept { return curves_; }
    [[nodiscard]] double total_length() const noexcept { return total_length_; }
    [[nodiscard]] bool empty() const noexcept { return curves_.empty(); }

    void append(const DubinsPath& curve);

private:
    std::vector<DubinsPath> curves_;
    double total_length_ = 0.0;
};

[[nodiscard]] inline double path_length(const CompositePath& path) noexcept { return path.total_length(); }

[[nodiscard]] Pose sample(const CompositePath& path, double s);

/// Chains `dubins_shortest(poses[i], poses[i+1], radii[i])`.
/// Throws std::invalid_argument on fewer than two poses, a radii count other
/// than poses.size() - 1, or a non-positive radius.
[[nodiscard]] CompositePath build_tour(std::span<const Pose> poses, std::span<const double> radii);

/// Length-only variant of build_tour; avoids materialising the curves.
[[nodiscard]] double tour_length(std::span<const Pose> poses, std::span<const double> radii);

}  // namespace medop
