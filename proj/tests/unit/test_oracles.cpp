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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "medop/oracles.hpp"

using namespace medop;
using std::numbers::pi;

TEST_CASE("reference constants") {
    CHECK(oracle::bessel_i(0, 0.0) == 1.0);
    CHECK(oracle::bessel_i(1, 0.0) == 0.0);
    CHECK(oracle::bessel_i(0, 2.0) == doctest::Approx(2.2795853023360673).epsilon(1e-14));
    CHECK(oracle::bessel_i(1, 2.0) == doctest::Approx(1.5906368546373291).epsilon(1e-14));
    CHECK(oracle::chi_square_critical_99(49) == doctest::Approx(74.919).epsilon(2e-3));
    CHECK(oracle::von_mises_mass(-pi, pi, 0.3, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(oracle::straight_pass_exposure(50.0, 5.0, -10.0, 10.0) == doctest::Approx(22.142974355881813));
}

TEST_CASE("tangent constructions reproduce the U-turn") {
    const auto cands = oracle::dubins_candidates({0, 0, 0}, {0, 4, pi}, 1.0);
    REQUIRE_FALSE(cands.empty());
    double best = 1e300;
    for (const auto& c : cands) {
        CHECK(c.endpoint_error < 1e-6);
        best = std::min(best, c.length);
    }
    CHECK(best == doctest::Approx(pi + 2.0).epsilon(1e-12));
}

TEST_CASE("brute-force ranks of a chain") {
    const std::vector<Fitness> pts{{1, 5, 0}, {3, 1, 0}, {2, 3, 0}};
    CHECK(oracle::brute_force_ranks(pts) == std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("every named check passes at reduced size") {
    for (const auto& name : oracle::check_names()) {
        const std::size_t n = name == "hypervolume" ? 20 : name == "von-mises" ? 0 : 200;
        const auto r = oracle::run_check(name, {n, 99});
        CHECK_MESSAGE(r.passed, name << ": " << r.detail);
    }
    CHECK_THROWS_AS((void)oracle::run_check("nonsense"), std::invalid_argument);
}
