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

#include "medop/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "medop/sensing.hpp"

namespace medop {

Tour decode(const Chromosome& chromosome, const Scenario& scenario) {
    const auto& genes = chromosome.genes;
    Tour tour;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (genes[i].active()) tour.order.push_back(i);
    }
    std::stable_sort(tour.order.begin(), tour.order.end(),
                     [&](std::size_t a, std::size_t b) { return genes[a].key < genes[b].key; });
    tour.poses.reserve(tour.order.size());
    for (std::size_t i : tour.order) {
        const double heading = scenario.fixed_heading(i).value_or(genes[i].heading);
        tour.poses.emplace_back(scenario.locations[i].position, heading);
    }
    if (scenario.closed && tour.poses.size() >= 2) {
        tour.poses.back() = Pose(tour.poses.back().position(), tour.poses.front().theta());
    }
    for (std::size_t k = 0; k + 1 < tour.order.size(); ++k) tour.radii.push_back(genes[tour.order[k]].radius);
    return tour;
}

Fitness evaluate(const Tour& tour, const Scenario& scenario, double exposure_step) {
    const CompositePath path = tour.path();
    return {reward_of_indices(scenario, tour.order), exposure(scenario.field, path, exposure_step),
            path.total_length()};
}

Fitness evaluate(const Chromosome& chromosome, const Scenario& scenario, double exposure_step) {
    return evaluate(decode(chromosome, scenario), scenario, exposure_step);
}

Chromosome empty_tour(const Scenario& scenario) {
    Chromosome c;
    c.genes.assign(scenario.size(), Gene{kInactiveKey, 0.0, scenario.rho_min});
    c.genes.front().key = 0.0;
    c.genes.back().key = 1.0;
    const Point a = scenario.locations.front().position;
    const Point b = scenario.locations.back().position;
    const double direct = a == b ? 0.0 : std::atan2(b.y - a.y, b.x - a.x);
    c.genes.front().heading = normalize_angle(direct);
    c.genes.back().heading = normalize_angle(direct);
    return c;
}

namespace {

double decoded_length(const Chromosome& c, const Scenario& scenario) { return decode(c, scenario).length(); }

void require_feasible(const Scenario& scenario) {
    const double len = decoded_length(empty_tour(scenario), scenario);
    if (len > scenario.t_max) {
        throw InfeasibleError("infeasible scenario: the direct start-goal curve (" + std::to_string(len) +
                              " m) exceeds t_max (" + std::to_string(scenario.t_max) + " m)");
    }
}

}  // namespace

void repair_budget(Chromosome& chromosome, const Scenario& scenario, Rng& rng) {
    for (;;) {
        const Tour tour = decode(chromosome, scenario);
        if (tour.length() <= scenario.t_max) return;
        if (tour.order.size() <= 2) break;
        const std::size_t pick = 1 + uniform_index(rng, tour.order.size() - 2);
        chromosome.genes[tour.order[pick]].key = kInactiveKey;
    }
    // Start and goal alone still exceed the budget: fall back to the
    // straightest direct curve.
    const Chromosome direct = empty_tour(scenario);
    chromosome.genes.front().heading = direct.genes.front().heading;
    chromosome.genes.front().radius = direct.genes.front().radius;
    chromosome.genes.back().heading = direct.genes.back().heading;
    if (decoded_length(chromosome, scenario) > scenario.t_max) {
        require_feasible(scenario);
        throw InfeasibleError("repair_budget: no feasible tour");
    }
}

std::vector<Chromosome> initialize_population(const Scenario& scenario, const SolverParams& params, Rng& rng) {
    validate(params);
    require_feasible(scenario);
    std::vector<Chromosome> population;
    population.reserve(params.population_size);
    const std::size_t last = scenario.goal_index();
    for (std::size_t n = 0; n < params.population_size; ++n) {
        Chromosome c;
        c.genes.resize(scenario.size());
        for (std::size_t i = 0; i <= last; ++i) {
            Gene& g = c.genes[i];
            const bool active = bernoulli(rng, 0.5);
            const double key = uniform_open01(rng);
            g.key = i == 0 ? 0.0 : i == last ? 1.0 : active ? key : kInactiveKey;
            g.heading = normalize_angle(uniform(rng, 0.0, kTwoPi));
            g.radius = uniform(rng, scenario.rho_min, scenario.rho_max);
        }
        repair_budget(c, scenario, rng);
        population.push_back(std::move(c));
    }
    return population;
}

void swap_gene_window(Chromosome& a, Chromosome& b, std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) std::swap(a.genes[i], b.genes[i]);
}

std::pair<Chromosome, Chromosome> crossover_two_point(const Chromosome& parent_a, const Chromosome& parent_b,
                                                      const Scenario& scenario, Rng& rng) {
    Chromosome a = parent_a;
    Chromosome b = parent_b;
    const std::size_t m = a.genes.size();
    if (m >= 3) {
        // Two distinct cut points in [1, m - 1]; the window never reaches the
        // start (index 0) or the goal (index m - 1).
        std::size_t first = 1 + uniform_index(rng, m - 1);
        std::size_t second = 1 + uniform_index(rng, m - 2);
        if (second >= first) {
            ++second;
        } else {
            std::swap(first, second);
        }
        swap_gene_window(a, b, first, second);
    }
    repair_budget(a, scenario, rng);
    repair_budget(b, scenario, rng);
    return {std::move(a), std::move(b)};
}

double sample_von_mises(double mean, double kappa, Rng& rng) {
    if (!(kappa > 0.0)) throw std::invalid_argument("sample_von_mises: kappa must be positive");
    if (kappa < 1e-8) return uniform01(rng) * kTwoPi;
    const double s = 0.5 / kappa;
    const double r = s + std::sqrt(1.0 + s * s);
    double w = 1.0;
    for (;;) {
        const double z = std::cos(std::numbers::pi * uniform01(rng));
        w = (1.0 + r * z) / (r + z);
        const double y = kappa * (r - w);
        const double v = uniform_open01(rng);
        if (y * (2.0 - y) - v >= 0.0 || std::log(y / v) + 1.0 - y >= 0.0) break;
    }
    double offset = std::acos(std::clamp(w, -1.0, 1.0));
    if (uniform01(rng) < 0.5) offset = -offset;
    return normalize_angle(mean + offset);
}

bool mutate_genes(Chromosome& chromosome, const Scenario& scenario, const SolverParams& params, Rng& rng) {
    auto& genes = chromosome.genes;
    bool changed = false;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (!bernoulli(rng, params.mutation_prob_gene)) continue;
        Gene& g = genes[i];
        // Start and goal keep their keys; their heading and radius still move.
        if (i != 0 && i + 1 != genes.size()) g.key = uniform_open01(rng);
        g.heading = sample_von_mises(g.heading, params.von_mises_kappa, rng);
        g.radius = uniform(rng, scenario.rho_min, scenario.rho_max);
        changed = true;
    }
    return changed;
}

Chromosome mutate(const Chromosome& chromosome, const Scenario& scenario, const SolverParams& params, Rng& rng) {
    Chromosome out = chromosome;
    mutate_genes(out, scenario, params, rng);
    if (params.alignment_mutation) out = align_headings(out, scenario);
    repair_budget(out, scenario, rng);
    return out;
}

Chromosome align_headings(const Chromosome& chromosome, const Scenario& scenario) {
    Chromosome out = chromosome;
    const Tour tour = decode(chromosome, scenario);
    for (std::size_t k = 1; k + 1 < tour.order.size(); ++k) {
        const std::size_t idx = tour.order[k];
        if (scenario.fixed_heading(idx)) continue;
        const Point prev = scenario.locations[tour.order[k - 1]].position;
        const Point next = scenario.locations[tour.order[k + 1]].position;
        if (prev == next) continue;
        out.genes[idx].heading = normalize_angle(std::atan2(next.y - prev.y, next.x - prev.x));
    }
    return out;
}

HypervolumeReference hypervolume_reference(const Scenario& scenario) {
    const double bound = scenario.field.cap() * static_cast<double>(scenario.field.nodes().size()) * scenario.t_max;
    return {0.0, bound + 1.0};
}

namespace {

struct Individual {
    Chromosome chromosome;
    Fitness fitness;
    bool evaluated = false;
    std::size_t rank = 0;
    double diversity = 0.0;
};

void evaluate_pending(std::vector<Individual>& individuals, const Scenario& scenario, double step,
                      std::size_t threads) {
    std::vector<Individual*> pending;
    for (auto& ind : individuals) {
        if (!ind.evaluated) pending.push_back(&ind);
    }
    auto work = [&](Individual* ind) {
        ind->fitness = evaluate(ind->chromosome, scenario, step);
        ind->evaluated = true;
    };
    if (threads <= 1 || pending.size() < 2) {
        for (auto* ind : pending) work(ind);
        return;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        const std::size_t n = std::min(threads, pending.size());
        for (std::size_t t = 0; t < n; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < pending.size(); k = next++) work(pending[k]);
            });
        }
    }
}

std::vector<Individual> survive(std::vector<Individual>& pool, std::size_t count, const SolverParams& params,
                                Rng& rng) {
    std::vector<Fitness> fit;
    fit.reserve(pool.size());
    for (const auto& ind : pool) fit.push_back(ind.fitness);

    Survivors chosen;
    if (params.single_objective) {
        std::vector<std::size_t> order(pool.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (fit[a].reward != fit[b].reward) return fit[a].reward > fit[b].reward;
            return fit[a].length < fit[b].length;
        });
        order.resize(std::min(count, order.size()));
        for (std::size_t i : order) {
            chosen.indices.push_back(i);
            chosen.rank.push_back(0);
            chosen.diversity.push_back(fit[i].reward);
        }
    } else if (params.selection == SelectionMethod::ReferencePoint) {
        chosen = select_by_reference_points(fit, count, rng);
    } else {
        chosen = select_by_crowding(fit, count);
    }

    std::vector<Individual> next;
    next.reserve(chosen.indices.size());
    for (std::size_t k = 0; k < chosen.indices.size(); ++k) {
        Individual ind = pool[chosen.indices[k]];
        ind.rank = chosen.rank[k];
        ind.diversity = chosen.diversity[k];
        next.push_back(std::move(ind));
    }
    return next;
}

const Individual& tournament(const std::vector<Individual>& pop, Rng& rng) {
    const Individual& a = pop[uniform_index(rng, pop.size())];
    const Individual& b = pop[uniform_index(rng, pop.size())];
    if (b.rank < a.rank) return b;
    if (b.rank == a.rank && b.diversity > a.diversity) return b;
    return a;
}

GenerationStats statistics(std::size_t generation, const std::vector<Individual>& pop,
                           const HypervolumeReference& reference) {
    std::vector<Fitness> fit;
    fit.reserve(pop.size());
    for (const auto& ind : pop) fit.push_back(ind.fitness);
    const auto fronts = non_dominated_sort(fit);
    std::vector<Fitness> first;
    for (std::size_t i : fronts.front()) first.push_back(fit[i]);

    GenerationStats stats;
    stats.generation = generation;
    stats.front_size = first.size();
    stats.hypervolume = hypervolume_2d(first, reference);
    stats.best_reward = fit.front().reward;
    stats.min_exposure = fit.front().exposure;
    for (const auto& f : fit) {
        stats.best_reward = std::max(stats.best_reward, f.reward);
        stats.min_exposure = std::min(stats.min_exposure, f.exposure);
    }
    return stats;
}

bool same_tour(const Tour& a, const Tour& b) {
    return a.order == b.order && a.poses == b.poses && a.radii == b.radii;
}

ParetoFront extract_front(const std::vector<Individual>& pop, const Scenario& scenario, bool single_objective) {
    ParetoFront front;
    if (pop.empty()) return front;
    if (single_objective) {
        const auto best = std::min_element(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
            if (a.fitness.reward != b.fitness.reward) return a.fitness.reward > b.fitness.reward;
            if (a.fitness.exposure != b.fitness.exposure) return a.fitness.exposure < b.fitness.exposure;
            return a.fitness.length < b.fitness.length;
        });
        front.solutions.push_back({best->chromosome, best->fitness});
        return front;
    }
    std::vector<Fitness> fit;
    for (const auto& ind : pop) fit.push_back(ind.fitness);
    const auto fronts = non_dominated_sort(fit);
    std::vector<Tour> kept_tours;
    for (std::size_t i : fronts.front()) {
        const Tour tour = decode(pop[i].chromosome, scenario);
        bool duplicate = false;
        for (std::size_t k = 0; k < front.solutions.size() && !duplicate; ++k) {
            duplicate = front.solutions[k].fitness == pop[i].fitness && same_tour(kept_tours[k], tour);
        }
        if (duplicate) continue;
        front.solutions.push_back({pop[i].chromosome, pop[i].fitness});
        kept_tours.push_back(tour);
    }
    std::stable_sort(front.solutions.begin(), front.solutions.end(), [](const Solution& a, const Solution& b) {
        if (a.fitness.reward != b.fitness.reward) return a.fitness.reward < b.fitness.reward;
        return a.fitness.exposure < b.fitness.exposure;
    });
    return front;
}

}  // namespace

EvolveResult evolve(const Scenario& scenario, const SolverParams& params, const EvolveOptions& options) {
    validate(params);
    Rng rng(params.seed);
    const HypervolumeReference reference = hypervolume_reference(scenario);
    const std::size_t n = params.population_size;

    std::vector<Individual> pop;
    for (auto& c : initialize_population(scenario, params, rng)) {
        if (options.on_candidate) options.on_candidate(c);
        pop.push_back({std::move(c), {}, false, 0, 0.0});
    }
    evaluate_pending(pop, scenario, params.exposure_step, options.threads);
    pop = survive(pop, n, params, rng);

    EvolveResult result;
    auto record = [&](std::size_t g) {
        result.history.push_back(statistics(g, pop, reference));
        if (options.on_generation) options.on_generation(result.history.back());
    };
    record(0);

    for (std::size_t g = 1; g <= params.generations; ++g) {
        std::vector<Individual> offspring;
        offspring.reserve(n + 1);
        while (offspring.size() < n) {
            Individual a = tournament(pop, rng);
            Individual b = tournament(pop, rng);
            if (bernoulli(rng, params.crossover_prob)) {
                auto [ca, cb] = crossover_two_point(a.chromosome, b.chromosome, scenario, rng);
                if (options.on_candidate) {
                    options.on_candidate(ca);
                    options.on_candidate(cb);
                }
                if (!(ca == a.chromosome)) a = {std::move(ca), {}, false, 0, 0.0};
                if (!(cb == b.chromosome)) b = {std::move(cb), {}, false, 0, 0.0};
            }
            for (Individual* child : {&a, &b}) {
                if (!bernoulli(rng, params.mutation_prob_individual)) continue;
                Chromosome mutated = mutate(child->chromosome, scenario, params, rng);
                if (options.on_candidate) options.on_candidate(mutated);
                if (!(mutated == child->chromosome)) *child = {std::move(mutated), {}, false, 0, 0.0};
            }
            offspring.push_back(std::move(a));
            if (offspring.size() < n) offspring.push_back(std::move(b));
        }
        evaluate_pending(offspring, scenario, params.exposure_step, options.threads);

        std::vector<Individual> pool = std::move(pop);
        pool.insert(pool.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
        pop = survive(pool, n, params, rng);
        record(g);
    }

    result.front = extract_front(pop, scenario, params.single_objective);
    return result;
}

}  // namespace medop
