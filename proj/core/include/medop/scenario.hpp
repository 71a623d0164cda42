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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "medop/geometry.hpp"
#include "medop/sensing.hpp"

namespace medop {

/// Base for scenario file problems. `field()` is a JSON-pointer-like path to
/// the offending entry, e.g. "locations[3].reward".
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ParseError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

class ValidationError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

struct TargetLocation {
    int id = 0;
    Point position;
    double reward = 0.0;

    friend bool operator==(const TargetLocation&, const TargetLocation&) = default;
};

/// A problem instance. `locations.front()` is the start and
/// `locations.back()` the goal; the chromosome gene index is the position in
/// this list.
struct Scenario {
    std::string name;
    std::vector<TargetLocation> locations;
    SensorField field;
    double t_max = 100.0;
    double rho_min = 1.0;
    double rho_max = 2.0;
    bool closed = false;
    /// Either empty or one entry per location; set entries pin that heading.
    std::vector<std::optional<double>> fixed_headings;

    [[nodiscard]] std::size_t size() const noexcept { return locations.size(); }
    [[nodiscard]] std::size_t start_index() const noexcept { return 0; }
    [[nodiscard]] std::size_t goal_index() const noexcept { return locations.size() - 1; }
    [[nodiscard]] std::optional<double> fixed_heading(std::size_t index) const {
        return fixed_headings.empty() ? std::nullopt : fixed_headings[index];
    }
    /// Location index for an id; throws std::invalid_argument when unknown.
    [[nodiscard]] std::size_t index_of(int id) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ValidationError naming the offending field(s).
void validate(const Scenario& scenario);

/// Parses and validates a JSON scenario document.
[[nodiscard]] Scenario load_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario_file(const std::filesystem::path& path);
/// Serialises in the same format; load_scenario(save_scenario(s)) == s.
[[nodiscard]] std::string save_scenario(const Scenario& scenario);

/// Reads the classic orienteering benchmark text format: a header line
/// "<tmax> <paths>" followed by "x y score" rows, the first row being the
/// start and the second the goal. The result has an empty sensor field and
/// rho_min == rho_max == radius.
[[nodiscard]] Scenario parse_orienteering_benchmark(std::string_view text, std::string name,
                                                    double t_max, double radius);

enum class InstanceKind { Cross, Grid };

[[nodiscard]] std::optional<InstanceKind> parse_instance_kind(std::string_view name) noexcept;
[[nodiscard]] std::string_view to_string(InstanceKind kind) noexcept;

/// Builtin instances. Cross: 30 x 22 m, 11 nodes in a cross, 18 targets.
/// Grid: 30 x 30 m, 8 nodes in a 4 x 2 grid, 15 targets. Rewards drawn from
/// {0.2, 0.4, 0.6, 0.8, 1.0}; alpha 50, mu 2, cap 30; t_max 100 and
/// rho in [1, 2]. A closed instance duplicates the start as the goal.
[[nodiscard]] Scenario generate_instance(InstanceKind kind, std::uint64_t seed, bool closed = false);

/// Sum of rewards of the given location ids, rounded to a 1e-9 grid so that
/// equal reward sets compare equal regardless of summation order.
/// Throws std::invalid_argument on an unknown id.
[[nodiscard]] double total_reward(const Scenario& scenario, std::span<const int> ids);

/// Same rounding, by location index.
[[nodiscard]] double reward_of_indices(const Scenario& scenario, std::span<const std::size_t> indices);

enum class SelectionMethod { ReferencePoint, CrowdingDistance };

[[nodiscard]] std::string_view to_string(SelectionMethod method) noexcept;
[[nodiscard]] std::optional<SelectionMethod> parse_selection_method(std::string_view name) noexcept;

/// Evolutionary search settings. Defaults follow the reference configuration
/// (400 x 400, pc 0.8, pm 0.4 / 0.02, kappa 2).
struct SolverParams {
    std::size_t population_size = 400;
    std::size_t generations = 400;
    double crossover_prob = 0.8;
    double mutation_prob_individual = 0.4;
    double mutation_prob_gene = 0.02;
    double von_mises_kappa = 2.0;
    SelectionMethod selection = SelectionMethod::ReferencePoint;
    std::uint64_t seed = 1;
    bool single_objective = false;
    bool alignment_mutation = false;
    double exposure_step = kDefaultExposureStep;
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const SolverParams& params);

}  // namespace medop
