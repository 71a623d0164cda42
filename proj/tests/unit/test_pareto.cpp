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
#include <set>
#include <stdexcept>
#include <vector>

#include "medop/oracles.hpp"
#include "medop/pareto.hpp"
#include "medop/random.hpp"

using namespace medop;

namespace {

Fitness fit(double r, double e) { return {r, e, 0.0}; }

std::vector<Fitness> random_points(Rng& rng, std::size_t n, int grid) {
    std::vector<Fitness> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(fit(static_cast<double>(uniform_index(rng, grid)),
                          static_cast<double>(uniform_index(rng, grid)) * 10.0));
    }
    return pts;
}

std::vector<Fitness> random_front(Rng& rng, std::size_t n) {
    std::vector<Fitness> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = uniform(rng, 0.0, 10.0);
        pts.push_back(fit(r, r * r + uniform(rng, 0.0, 1.0)));
    }
    std::vector<Fitness> front;
    for (const auto& p : pts) {
        if (std::none_of(pts.begin(), pts.end(), [&](const Fitness& q) { return dominates(q, p); })) {
            front.push_back(p);
        }
    }
    return front;
}

}  // namespace

TEST_CASE("dominance examples") {
    CHECK(dominates(fit(5, 10), fit(4, 12)));
    CHECK_FALSE(dominates(fit(5, 10), fit(5, 10)));
    CHECK_FALSE(dominates(fit(5, 10), fit(6, 8)));
    CHECK(dominates(fit(6, 8), fit(5, 10)));
    CHECK(dominates(fit(5, 9), fit(5, 10)));
    CHECK_FALSE(dominates(fit(6, 12), fit(5, 10)));
    CHECK_FALSE(dominates(Fitness{5, 10, 1}, Fitness{5, 10, 99}));
}

TEST_CASE("property: dominance is a strict partial order") {
    Rng rng(1);
    for (int t = 0; t < 20000; ++t) {
        const auto pts = random_points(rng, 3, 4);
        const Fitness &a = pts[0], &b = pts[1], &c = pts[2];
        CHECK_FALSE(dominates(a, a));
        CHECK_FALSE((dominates(a, b) && dominates(b, a)));
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    }
}

TEST_CASE("sorting: antichain, chain and brute force") {
    const std::vector<Fitness> anti{fit(1, 1), fit(2, 2), fit(3, 3)};
    CHECK(non_dominated_sort(anti).size() == 1);

    std::vector<Fitness> chain;
    for (int i = 0; i < 10; ++i) chain.push_back(fit(i, -i));
    const auto fronts = non_dominated_sort(chain);
    REQUIRE(fronts.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) CHECK(fronts[k] == Front{9 - k});

    CHECK(non_dominated_sort(std::vector<Fitness>{}).empty());

    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto pts = random_points(rng, 200, 15);
        const auto ranks = oracle::brute_force_ranks(pts);
        const auto sorted = non_dominated_sort(pts);
        std::vector<std::size_t> seen(pts.size(), 99999);
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            CHECK(std::is_sorted(sorted[k].begin(), sorted[k].end()));
            for (std::size_t i : sorted[k]) seen[i] = k;
        }
        CHECK(seen == ranks);
    }
}

TEST_CASE("survival layers move repeats after their front") {
    const std::vector<Fitness> pts{fit(1, 1), fit(1, 1), fit(2, 5), fit(0, 3), fit(1, 1)};
    const auto layers = survival_layers(pts);
    REQUIRE(layers.size() == 3);
    CHECK(layers[0] == Front{0, 2});
    CHECK(layers[1] == Front{1, 4});
    CHECK(layers[2] == Front{3});
}

TEST_CASE("hypervolume") {
    const HypervolumeReference ref{0.0, 100.0};
    CHECK(hypervolume_2d(std::vector<Fitness>{fit(2, 40)}, ref) == doctest::Approx(2.0 * 60.0));
    CHECK(hypervolume_2d(std::vector<Fitness>{fit(2, 40), fit(2, 40)}, ref) == doctest::Approx(120.0));
    CHECK(hypervolume_2d(std::vector<Fitness>{fit(2, 40), fit(4, 70)}, ref) == doctest::Approx(120.0 + 2.0 * 30.0));
    CHECK(hypervolume_2d(std::vector<Fitness>{}, ref) == 0.0);
    CHECK_THROWS_AS((void)hypervolume_2d(std::vector<Fitness>{fit(2, 140)}, ref), std::invalid_argument);
}

TEST_CASE("hypervolume agrees with Monte Carlo") {
    Rng rng(3);
    const auto front = random_front(rng, 50);
    const HypervolumeReference ref{0.0, 120.0};
    Rng mc(4);
    const auto est = oracle::hypervolume_monte_carlo(front, ref, 1'000'000, mc);
    CHECK(std::fabs(hypervolume_2d(front, ref) - est.value) <= 3.0 * est.standard_error);
}

TEST_CASE("property: adding a point never decreases the hypervolume") {
    Rng rng(5);
    const HypervolumeReference ref{0.0, 200.0};
    for (int t = 0; t < 300; ++t) {
        auto pts = random_points(rng, 1 + uniform_index(rng, 20), 15);
        const double before = hypervolume_2d(pts, ref);
        pts.push_back(random_points(rng, 1, 15).front());
        CHECK(hypervolume_2d(pts, ref) >= before);
    }
}

TEST_CASE("extremes") {
    const std::vector<Fitness> two{{1.4, 2682.81, 36.67}, {7.6, 6671.75, 88.91}};
    const auto e = extremes(two);
    CHECK(e.reward.min == 1.4);
    CHECK(e.reward.max == 7.6);
    CHECK(e.exposure.min == 2682.81);
    CHECK(e.exposure.max == 6671.75);
    CHECK(e.length.min == 36.67);
    CHECK(e.length.max == 88.91);

    const auto one = extremes(std::vector<Fitness>{{3, 4, 5}});
    CHECK(one.reward.min == one.reward.max);
    CHECK(one.exposure.min == one.exposure.max);
    CHECK_THROWS_AS((void)extremes(std::vector<Fitness>{}), std::invalid_argument);
    CHECK_THROWS_AS((void)extremes(ParetoFront{}), std::invalid_argument);

    Rng rng(6);
    const auto front = random_front(rng, 40);
    const auto got = extremes(front);
    double rmin = 1e300, rmax = -1e300, emin = 1e300, emax = -1e300;
    for (const auto& f : front) {
        rmin = std::min(rmin, f.reward);
        rmax = std::max(rmax, f.reward);
        emin = std::min(emin, f.exposure);
        emax = std::max(emax, f.exposure);
    }
    CHECK(got.reward.min == rmin);
    CHECK(got.reward.max == rmax);
    CHECK(got.exposure.min == emin);
    CHECK(got.exposure.max == emax);
}

TEST_CASE("crowding distance marks boundaries infinite") {
    const std::vector<Fitness> pts{fit(0, 0), fit(1, 1), fit(2, 4), fit(3, 9)};
    const std::vector<std::size_t> members{0, 1, 2, 3};
    const auto d = crowding_distance(pts, members);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[3]));
    CHECK(d[1] == doctest::Approx(2.0 / 3.0 + 4.0 / 9.0));
    CHECK(d[2] == doctest::Approx(2.0 / 3.0 + 8.0 / 9.0));
}

TEST_CASE("reference directions span the simplex") {
    const auto dirs = reference_directions(4);
    REQUIRE(dirs.size() == 5);
    for (const auto& d : dirs) CHECK(d[0] + d[1] == doctest::Approx(1.0));
    CHECK(dirs.front()[0] == 0.0);
    CHECK(dirs.back()[0] == 1.0);
    CHECK_THROWS_AS((void)reference_directions(0), std::invalid_argument);
}

TEST_CASE("property: survivor selection keeps whole better fronts first") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        std::vector<Fitness> pts;
        for (int i = 0; i < 80; ++i) pts.push_back(fit(uniform(rng, 0.0, 10.0), uniform(rng, 0.0, 100.0)));
        const auto ranks = oracle::brute_force_ranks(pts);
        for (bool crowding : {false, true}) {
            Rng sel(t);
            const auto s = crowding ? select_by_crowding(pts, 40) : select_by_reference_points(pts, 40, sel);
            REQUIRE(s.indices.size() == 40);
            CHECK(std::set<std::size_t>(s.indices.begin(), s.indices.end()).size() == 40);
            const std::size_t worst = *std::max_element(s.indices.begin(), s.indices.end(), [&](auto a, auto b) {
                return ranks[a] < ranks[b];
            });
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const bool kept = std::find(s.indices.begin(), s.indices.end(), i) != s.indices.end();
                if (ranks[i] < ranks[worst]) CHECK(kept);
            }
        }
    }
}

TEST_CASE("property: first-front hypervolume survives selection") {
    Rng rng(8);
    const HypervolumeReference ref{0.0, 1000.0};
    for (int t = 0; t < 100; ++t) {
        const auto pts = random_points(rng, 60, 20);
        std::vector<Fitness> first;
        const auto fronts = non_dominated_sort(pts);
        for (std::size_t i : fronts.front()) first.push_back(pts[i]);
        Rng sel(t);
        const auto s = select_by_reference_points(pts, 30, sel);
        std::vector<Fitness> kept;
        for (std::size_t i : s.indices) kept.push_back(pts[i]);
        CHECK(hypervolume_2d(kept, ref) == doctest::Approx(hypervolume_2d(first, ref)));
    }
}
