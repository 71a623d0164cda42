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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "medop/evolution.hpp"
#include "medop/oracles.hpp"
#include "medop/scenario.hpp"

using namespace medop;
using std::numbers::pi;

namespace {

Scenario line_scenario(double t_max) {
    Scenario s;
    s.name = "line";
    s.locations = {{0, {0, 0}, 0.0}, {1, {3, 0}, 0.4}, {2, {6, 0}, 0.8}, {3, {10, 0}, 0.0}};
    s.field = SensorField({}, 50.0, 2.0, 30.0);
    s.t_max = t_max;
    s.rho_min = 1.0;
    s.rho_max = 2.0;
    validate(s);
    return s;
}

Chromosome all_active(const Scenario& s, Rng& rng) {
    Chromosome c = empty_tour(s);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) c.genes[i] = {uniform_open01(rng), uniform(rng, 0.0, kTwoPi), 1.0};
    return c;
}

double tour_len(const Chromosome& c, const Scenario& s) { return decode(c, s).length(); }

SolverParams small_params(std::uint64_t seed) {
    SolverParams p;
    p.population_size = 40;
    p.generations = 15;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("decode sorts active genes by key") {
    const Scenario s = line_scenario(100.0);
    Chromosome c = empty_tour(s);
    c.genes[1].key = 0.7;
    c.genes[2].key = 0.3;
    const Tour t = decode(c, s);
    CHECK(t.order == std::vector<std::size_t>{0, 2, 1, 3});
    REQUIRE(t.radii.size() == 3);
    CHECK(t.poses[1].position() == s.locations[2].position);

    c.genes[1].key = 0.3;
    CHECK(decode(c, s).order == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(decode(empty_tour(s), s).order == std::vector<std::size_t>{0, 3});
}

TEST_CASE("decode uses the radius of the gene at each sequence position") {
    const Scenario s = line_scenario(100.0);
    Chromosome c = empty_tour(s);
    c.genes[0].radius = 1.1;
    c.genes[1] = {0.5, 0.0, 1.7};
    const Tour t = decode(c, s);
    CHECK(t.radii == std::vector<double>{1.1, 1.7});
}

TEST_CASE("closed tours reuse the start heading at the goal") {
    const Scenario s = generate_instance(InstanceKind::Grid, 1, true);
    Rng rng(1);
    SolverParams p;
    p.population_size = 20;
    for (const auto& c : initialize_population(s, p, rng)) {
        const Tour t = decode(c, s);
        CHECK(t.poses.front().position() == t.poses.back().position());
        CHECK(t.poses.front().theta() == t.poses.back().theta());
    }
}

TEST_CASE("evaluate matches geometry and sensing") {
    const Scenario s = line_scenario(100.0);
    const Fitness f = evaluate(empty_tour(s), s, 0.05);
    CHECK(f.reward == 0.0);
    CHECK(f.exposure == 0.0);
    CHECK(f.length == doctest::Approx(10.0));

    Scenario arc = line_scenario(100.0);
    arc.locations = {{0, {-10, 0}, 0.0}, {1, {10, 0}, 0.0}};
    arc.field = SensorField({{0, 5}}, 50.0, 2.0, 30.0);
    const Fitness g = evaluate(empty_tour(arc), arc, 0.01);
    CHECK(g.exposure == doctest::Approx(10.0 * (std::atan(2.0) + std::atan(2.0))).epsilon(1e-3 / 22.0));

    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    Rng rng(2);
    SolverParams p;
    p.population_size = 30;
    for (const auto& c : initialize_population(cross, p, rng)) {
        const Tour t = decode(c, cross);
        const Fitness fc = evaluate(c, cross, 0.05);
        CHECK(fc.length == doctest::Approx(t.path().total_length()).epsilon(1e-12));
        CHECK(fc.exposure == doctest::Approx(exposure(cross.field, t.path(), 0.05)).epsilon(1e-12));
        CHECK(fc.reward == reward_of_indices(cross, t.order));
        for (std::size_t k = 0; k + 1 < t.poses.size(); ++k) {
            CHECK(t.path().curves()[k].length ==
                  doctest::Approx(dubins_shortest(t.poses[k], t.poses[k + 1], t.radii[k]).length).epsilon(1e-12));
        }
    }
}

TEST_CASE("initialization") {
    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    SolverParams p;
    p.population_size = 200;
    Rng a(5), b(5);
    const auto pop = initialize_population(cross, p, a);
    CHECK(pop == initialize_population(cross, p, b));
    REQUIRE(pop.size() == 200);
    for (const auto& c : pop) {
        CHECK(c.genes.front().key == 0.0);
        CHECK(c.genes.back().key == 1.0);
        CHECK(tour_len(c, cross) <= 100.0);
        for (const auto& g : c.genes) {
            CHECK((g.heading >= 0.0 && g.heading < kTwoPi));
            CHECK((g.radius >= cross.rho_min && g.radius <= cross.rho_max));
        }
    }

    Scenario tight = line_scenario(5.0);
    Rng c(1);
    CHECK_THROWS_AS((void)initialize_population(tight, p, c), InfeasibleError);
}

TEST_CASE("repair") {
    const Scenario s = generate_instance(InstanceKind::Cross, 2);
    Rng rng(3);
    Chromosome feasible = empty_tour(s);
    const Chromosome before = feasible;
    repair_budget(feasible, s, rng);
    CHECK(feasible == before);

    Scenario tiny = s;
    tiny.t_max = tour_len(empty_tour(s), s) + 1e-6;
    for (int t = 0; t < 20; ++t) {
        Chromosome c = all_active(s, rng);
        c.genes.front().heading = empty_tour(s).genes.front().heading;
        c.genes.back().heading = empty_tour(s).genes.back().heading;
        c.genes.front().radius = s.rho_min;
        repair_budget(c, tiny, rng);
        CHECK(decode(c, tiny).order.size() == 2);
    }
    for (int t = 0; t < 200; ++t) {
        Chromosome c = all_active(s, rng);
        repair_budget(c, s, rng);
        CHECK(evaluate(c, s, 0.05).length <= s.t_max);
    }

    Scenario impossible = line_scenario(5.0);
    Chromosome c = empty_tour(impossible);
    CHECK_THROWS_AS(repair_budget(c, impossible, rng), InfeasibleError);
}

TEST_CASE("crossover") {
    const Scenario s = generate_instance(InstanceKind::Cross, 1);
    Rng rng(4);
    SolverParams p;
    p.population_size = 50;
    const auto pop = initialize_population(s, p, rng);

    auto [x, y] = crossover_two_point(pop[0], pop[0], s, rng);
    CHECK(x == pop[0]);
    CHECK(y == pop[0]);

    Chromosome a = pop[1], b = pop[2];
    swap_gene_window(a, b, 4, 4);
    CHECK(a == pop[1]);
    CHECK(b == pop[2]);

    for (int t = 0; t < 200; ++t) {
        const auto& pa = pop[uniform_index(rng, pop.size())];
        const auto& pb = pop[uniform_index(rng, pop.size())];
        Chromosome ca = pa, cb = pb;
        const std::size_t first = 1 + uniform_index(rng, s.size() - 2);
        const std::size_t last = first + uniform_index(rng, s.size() - 1 - first);
        swap_gene_window(ca, cb, first, last);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const bool kept = ca.genes[i] == pa.genes[i] && cb.genes[i] == pb.genes[i];
            const bool swapped = ca.genes[i] == pb.genes[i] && cb.genes[i] == pa.genes[i];
            CHECK((kept || swapped));
        }
        CHECK(ca.genes.front() == pa.genes.front());
        CHECK(ca.genes.back() == pa.genes.back());

        auto [ra, rb] = crossover_two_point(pa, pb, s, rng);
        CHECK(tour_len(ra, s) <= s.t_max);
        CHECK(tour_len(rb, s) <= s.t_max);
        CHECK(ra.genes.front().key == 0.0);
        CHECK(rb.genes.back().key == 1.0);
    }
}

TEST_CASE("mutation") {
    const Scenario s = generate_instance(InstanceKind::Cross, 1);
    Rng rng(5);
    SolverParams p;
    p.population_size = 20;
    const auto pop = initialize_population(s, p, rng);

    p.mutation_prob_gene = 0.0;
    for (const auto& c : pop) {
        Chromosome m = c;
        CHECK_FALSE(mutate_genes(m, s, p, rng));
        CHECK(m == c);
        CHECK(mutate(c, s, p, rng) == c);
    }

    p.mutation_prob_gene = 1.0;
    for (const auto& c : pop) {
        Chromosome m = c;
        CHECK(mutate_genes(m, s, p, rng));
        CHECK(m.genes.front().key == 0.0);
        CHECK(m.genes.back().key == 1.0);
        for (std::size_t i = 1; i + 1 < m.genes.size(); ++i) {
            CHECK((m.genes[i].key > 0.0 && m.genes[i].key < 1.0));
        }
        for (const auto& g : m.genes) CHECK((g.radius >= s.rho_min && g.radius <= s.rho_max));
        CHECK(tour_len(mutate(c, s, p, rng), s) <= s.t_max);
    }
}

TEST_CASE("mutated headings stay centred on the prior heading") {
    const Scenario s = line_scenario(100.0);
    SolverParams p;
    p.mutation_prob_gene = 1.0;
    Rng rng(6);
    const double prior = 1.0;
    std::complex<double> sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Chromosome c = empty_tour(s);
        c.genes[1] = {0.5, prior, 1.0};
        (void)mutate_genes(c, s, p, rng);
        sum += std::polar(1.0, c.genes[1].heading);
    }
    const double mean = std::arg(sum);
    const double resultant = std::abs(sum) / n;
    // Circular standard error of the mean direction.
    const double se = std::sqrt((1.0 - resultant * resultant) / 2.0 / n) / resultant;
    const double gap = std::fabs(std::remainder(mean - prior, kTwoPi));
    CHECK(gap <= 3.0 * std::max(se, 1e-3));
}

TEST_CASE("von Mises sampler") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double x = sample_von_mises(2.0, 1e6, rng);
        CHECK(std::fabs(std::remainder(x - 2.0, kTwoPi)) < 0.01);
        CHECK((x >= 0.0 && x < kTwoPi));
    }
    CHECK_THROWS_AS((void)sample_von_mises(0.0, 0.0, rng), std::invalid_argument);

    const double expected = oracle::bessel_i(1, 2.0) / oracle::bessel_i(0, 2.0);
    CHECK(expected == doctest::Approx(0.6977746579640083).epsilon(1e-12));
    std::complex<double> sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += std::polar(1.0, sample_von_mises(0.0, 2.0, rng));
    CHECK(std::fabs(std::abs(sum) / n - expected) <= 0.01);

    const auto r = oracle::run_check("von-mises");
    CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("heading alignment") {
    Scenario s = line_scenario(100.0);
    Chromosome c = empty_tour(s);
    c.genes[1] = {0.3, 2.0, 1.0};
    c.genes[2] = {0.6, 4.0, 1.0};
    const Chromosome a = align_headings(c, s);
    CHECK(a.genes[1].heading == doctest::Approx(0.0));
    CHECK(a.genes[2].heading == doctest::Approx(0.0));
    CHECK(align_headings(a, s) == a);

    const Chromosome bare = empty_tour(s);
    CHECK(align_headings(bare, s) == bare);

    const Scenario cross = generate_instance(InstanceKind::Cross, 3);
    Rng rng(8);
    SolverParams p;
    p.population_size = 50;
    for (const auto& x : initialize_population(cross, p, rng)) {
        const Chromosome once = align_headings(x, cross);
        CHECK(align_headings(once, cross) == once);
        CHECK(once.genes.front() == x.genes.front());
        CHECK(once.genes.back() == x.genes.back());
    }
}

TEST_CASE("fixed radius and pinned headings reduce fitness to subset and order") {
    Scenario s = generate_instance(InstanceKind::Cross, 1);
    s.field = s.field.without_nodes();
    s.rho_max = s.rho_min;
    s.fixed_headings.assign(s.size(), 0.5);
    Rng rng(9);
    SolverParams p;
    p.population_size = 30;
    for (const auto& c : initialize_population(s, p, rng)) {
        Chromosome other = c;
        for (auto& g : other.genes) g.heading = uniform(rng, 0.0, kTwoPi);
        CHECK(evaluate(other, s, 0.05) == evaluate(c, s, 0.05));
    }
}

TEST_CASE("evolve: zero generations, determinism and thread invariance") {
    const Scenario s = generate_instance(InstanceKind::Cross, 1);
    SolverParams p = small_params(11);
    p.generations = 0;
    const auto r0 = evolve(s, p);
    REQUIRE(r0.history.size() == 1);
    CHECK_FALSE(r0.front.solutions.empty());

    p = small_params(12);
    const auto a = evolve(s, p);
    const auto b = evolve(s, p);
    EvolveOptions threaded;
    threaded.threads = 4;
    const auto c = evolve(s, p, threaded);
    CHECK(a.front.fitnesses() == b.front.fitnesses());
    CHECK(a.front.fitnesses() == c.front.fitnesses());
    REQUIRE(a.front.solutions.size() == c.front.solutions.size());
    for (std::size_t i = 0; i < a.front.solutions.size(); ++i) {
        CHECK(a.front.solutions[i].chromosome == c.front.solutions[i].chromosome);
    }
}

TEST_CASE("evolve: front invariants and elitism") {
    const Scenario s = generate_instance(InstanceKind::Cross, 1);
    for (auto method : {SelectionMethod::ReferencePoint, SelectionMethod::CrowdingDistance}) {
        SolverParams p = small_params(13);
        p.selection = method;
        std::size_t violations = 0;
        EvolveOptions opts;
        opts.on_candidate = [&](const Chromosome& c) {
            if (tour_len(c, s) > s.t_max || c.genes.front().key != 0.0 || c.genes.back().key != 1.0) ++violations;
        };
        const auto r = evolve(s, p, opts);
        CHECK(violations == 0);
        REQUIRE(r.history.size() == p.generations + 1);
        for (std::size_t g = 1; g < r.history.size(); ++g) {
            CHECK(r.history[g].hypervolume >= r.history[g - 1].hypervolume);
        }
        const auto fits = r.front.fitnesses();
        for (const auto& f : fits) {
            CHECK(f.length <= s.t_max);
            for (const auto& h : fits) CHECK_FALSE(dominates(h, f));
        }
        CHECK(std::is_sorted(fits.begin(), fits.end(),
                             [](const Fitness& x, const Fitness& y) { return x.reward < y.reward; }));
        const Fitness bare = evaluate(empty_tour(s), s, p.exposure_step);
        CHECK(extremes(r.front).reward.max > bare.reward);
        const auto best = std::max_element(fits.begin(), fits.end(), [](auto& x, auto& y) {
            return x.reward < y.reward;
        });
        CHECK(extremes(r.front).exposure.min <= best->exposure);
        for (const auto& sol : r.front.solutions) {
            CHECK(evaluate(sol.chromosome, s, p.exposure_step) == sol.fitness);
        }
    }
}

TEST_CASE("evolve: single-objective mode returns one best tour") {
    Scenario s = generate_instance(InstanceKind::Cross, 1);
    s.field = s.field.without_nodes();
    SolverParams p = small_params(14);
    p.single_objective = true;
    const auto r = evolve(s, p);
    REQUIRE(r.front.solutions.size() == 1);
    CHECK(r.front.solutions[0].fitness.exposure == 0.0);
    CHECK(r.front.solutions[0].fitness.length <= s.t_max);
    CHECK(r.front.solutions[0].fitness.reward == r.history.back().best_reward);
}
