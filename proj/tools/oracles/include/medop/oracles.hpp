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

// Reference computations used to cross-check the solver. Nothing here calls
// into the code paths it verifies: Dubins curves come from circle tangents
// and numerically integrated kinematics, fronts from pairwise peeling,
// von Mises moments from Bessel series.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "medop/chromosome.hpp"
#include "medop/geometry.hpp"
#include "medop/pareto.hpp"
#include "medop/random.hpp"

namespace medop::oracle {

struct DubinsCandidate {
    std::string family;
    double length = 0.0;
    double endpoint_error = 0.0;  // max of position error (m) and heading error (rad)
};

/// Every CSC/CCC construction between the poses found from circle tangents,
/// with the end pose reached by RK4 integration of the unicycle model.
/// Only candidates whose endpoint error is below `tolerance` are returned.
[[nodiscard]] std::vector<DubinsCandidate> dubins_candidates(const Pose& start, const Pose& end, double radius,
                                                             double tolerance = 1e-6);

/// Integrates (kind, arc length) segments from `start` with RK4.
[[nodiscard]] Pose integrate_segments(const Pose& start, std::span<const SegmentKind> kinds,
                                      std::span<const double> lengths, double radius);

/// Sum of chord lengths of the curve sampled every `step` metres.
[[nodiscard]] double chord_length(const DubinsPath& path, double step);

/// Exposure of a straight pass at perpendicular distance `offset` from a
/// single uncapped alpha / d^2 node, between along-track coordinates t0 < t1.
[[nodiscard]] double straight_pass_exposure(double alpha, double offset, double t0, double t1);

/// Front index of every point, by repeatedly peeling the points no remaining
/// point dominates.
[[nodiscard]] std::vector<std::size_t> brute_force_ranks(std::span<const Fitness> points);

/// Modified Bessel function of the first kind, integer order, power series.
[[nodiscard]] double bessel_i(int order, double x);

[[nodiscard]] double von_mises_density(double x, double mean, double kappa);

/// Probability mass of [a, b] under the von Mises density (Simpson rule).
[[nodiscard]] double von_mises_mass(double a, double b, double mean, double kappa);

/// Upper 1% point of the chi-square distribution (Wilson-Hilferty).
[[nodiscard]] double chi_square_critical_99(std::size_t dof);

struct MonteCarloEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

[[nodiscard]] MonteCarloEstimate hypervolume_monte_carlo(std::span<const Fitness> points,
                                                         HypervolumeReference reference, std::size_t samples,
                                                         Rng& rng);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckOptions {
    std::size_t n = 0;  // 0: the check's default size
    std::uint64_t seed = 12345;
};

/// Names accepted by run_check.
[[nodiscard]] std::vector<std::string> check_names();

/// Runs one named check. Throws std::invalid_argument on an unknown name.
[[nodiscard]] CheckResult run_check(const std::string& name, const CheckOptions& options = {});

}  // namespace medop::oracle
