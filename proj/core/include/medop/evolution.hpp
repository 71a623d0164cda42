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
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "medop/chromosome.hpp"
#include "medop/geometry.hpp"
#include "medop/pareto.hpp"
#include "medop/random.hpp"
#include "medop/scenario.hpp"

namespace medop {

/// Raised when even the direct start-to-goal curve exceeds the budget.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decoded visit sequence. `order` holds location indices; `radii[i]` is the
/// turning radius of the curve from poses[i] to poses[i + 1].
struct Tour {
    std::vector<std::size_t> order;
    std::vector<Pose> poses;
    std::vector<double> radii;

    [[nodiscard]] CompositePath path() const { return build_tour(poses, radii); }
    [[nodiscard]] double length() const { return tour_length(poses, radii); }
};

/// Active genes sorted by key (ties by location index). Pinned headings
/// override gene headings; a closed scenario reuses the start heading at the
/// goal.
[[nodiscard]] Tour decode(const Chromosome& chromosome, const Scenario& scenario);

[[nodiscard]] Fitness evaluate(const Tour& tour, const Scenario& scenario, double exposure_step);
[[nodiscard]] Fitness evaluate(const Chromosome& chromosome, const Scenario& scenario, double exposure_step);

/// Chromosome with only start and goal active.
[[nodiscard]] Chromosome empty_tour(const Scenario& scenario);

/// Deactivates random interior genes until the decoded tour fits t_max.
/// Throws InfeasibleError when start and goal alone exceed the budget.
void repair_budget(Chromosome& chromosome, const Scenario& scenario, Rng& rng);

/// Random population; every member is repaired. Throws InfeasibleError when
/// the scenario admits no feasible tour at rho_min.
[[nodiscard]] std::vector<Chromosome> initialize_population(const Scenario& scenario, const SolverParams& params,
                                                            Rng& rng);

/// Swaps whole genes in the interior window [first, last) between the two
/// chromosomes. No repair.
void swap_gene_window(Chromosome& a, Chromosome& b, std::size_t first, std::size_t last);

/// Two-point crossover over the interior genes, then repair of both children.
[[nodiscard]] std::pair<Chromosome, Chromosome> crossover_two_point(const Chromosome& parent_a,
                                                                    const Chromosome& parent_b,
                                                                    const Scenario& scenario, Rng& rng);

/// Gene-level mutation without repair: each gene is picked with probability
/// mutation_prob_gene and gets a von Mises heading around its current one and
/// a uniform radius. Picked interior genes also get a fresh key in (0, 1).
/// Returns whether any gene was picked.
bool mutate_genes(Chromosome& chromosome, const Scenario& scenario, const SolverParams& params, Rng& rng);

/// mutate_genes, then heading alignment when enabled, then repair.
[[nodiscard]] Chromosome mutate(const Chromosome& chromosome, const Scenario& scenario, const SolverParams& params,
                                Rng& rng);

/// Best-Fisher rejection sampler for the von Mises distribution; result in [0, 2π).
[[nodiscard]] double sample_von_mises(double mean, double kappa, Rng& rng);

/// Points every interior stop of the tour from its predecessor towards its
/// successor. Pinned headings are left alone.
[[nodiscard]] Chromosome align_headings(const Chromosome& chromosome, const Scenario& scenario);

struct GenerationStats {
    std::size_t generation = 0;
    std::size_t front_size = 0;
    double hypervolume = 0.0;
    double best_reward = 0.0;
    double min_exposure = 0.0;
};

/// Fixed hypervolume reference of a scenario: zero reward and an exposure
/// no tour within budget can reach.
[[nodiscard]] HypervolumeReference hypervolume_reference(const Scenario& scenario);

struct EvolveOptions {
    /// Worker threads for fitness evaluation; results do not depend on it.
    std::size_t threads = 1;
    /// Called with every chromosome that enters the population: initial
    /// members and each child after crossover or mutation (post-repair).
    std::function<void(const Chromosome&)> on_candidate;
    std::function<void(const GenerationStats&)> on_generation;
};

struct EvolveResult {
    ParetoFront front;
    std::vector<GenerationStats> history;
};

/// Runs the generational loop. In single-objective mode survivors and
/// tournaments use reward only and the front holds the single best tour.
[[nodiscard]] EvolveResult evolve(const Scenario& scenario, const SolverParams& params,
                                  const EvolveOptions& options = {});

}  // namespace medop
