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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "medop/evolution.hpp"
#include "medop/scenario.hpp"

namespace medop::app {

/// One stop of a stored tour. `radius` is the turning radius of the curve
/// that leaves the stop and is absent on the final stop.
struct TourStop {
    int id = 0;
    double heading = 0.0;
    std::optional<double> radius;
};

struct ReportSolution {
    Fitness fitness;
    std::vector<TourStop> tour;
};

struct RunReport {
    Scenario scenario;
    SolverParams params;
    std::vector<GenerationStats> history;
    std::vector<ReportSolution> front;
    double duration_seconds = 0.0;
};

[[nodiscard]] std::vector<TourStop> to_stops(const Tour& tour, const Scenario& scenario);

/// Rebuilds poses and radii from stored stops. Throws std::invalid_argument
/// for unknown ids, headings outside [0, 2π), radii outside
/// [rho_min, rho_max], or a tour that does not run from start to goal.
[[nodiscard]] Tour from_stops(const std::vector<TourStop>& stops, const Scenario& scenario);

[[nodiscard]] RunReport make_report(const Scenario& scenario, const SolverParams& params,
                                    const EvolveResult& result, double duration_seconds);

[[nodiscard]] std::string to_json(const RunReport& report);
[[nodiscard]] RunReport report_from_json(const std::string& text);
[[nodiscard]] RunReport read_report(const std::filesystem::path& path);

[[nodiscard]] std::vector<TourStop> stops_from_json(const std::string& text);

/// "reward,exposure,length" header, one row per solution, 6 significant digits.
[[nodiscard]] std::string front_csv(const std::vector<ReportSolution>& front);

/// Polyline points (metres) along the tour, spaced at most `step` apart.
[[nodiscard]] std::vector<Point> trace_tour(const Tour& tour, double step);

/// SVG rendering of one solution: intensity heat layer, sensors, targets
/// scaled by reward, start/goal markers, the path and an R/E/L title.
[[nodiscard]] std::string render_svg(const Scenario& scenario, const Tour& tour, const Fitness& fitness);

}  // namespace medop::app
