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
#include <limits>
#include <stdexcept>
#include <vector>

#include "medop/geometry.hpp"
#include "medop/oracles.hpp"
#include "medop/random.hpp"
#include "medop/scenario.hpp"
#include "medop/sensing.hpp"

using namespace medop;

namespace {

constexpr double kNoCap = std::numeric_limits<double>::max();

Pose random_pose(Rng& rng, double lo, double hi) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, 0.0, kTwoPi)};
}

}  // namespace

TEST_CASE("sensing value examples") {
    const SensorField f({{0, 0}}, 50.0, 2.0, 30.0);
    CHECK(sensing_value(f, 0, {1, 2}) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(sensing_value(f, 0, {1, 0}) == 30.0);
    CHECK(sensing_value(f, 0, {0, 0}) == 30.0);
    CHECK_THROWS_AS((void)sensing_value(f, 1, {0, 0}), std::out_of_range);

    const SensorField g({{0, 0}}, 50.0, 1.5, 30.0);
    CHECK(sensing_value(g, 0, {4, 0}) == doctest::Approx(50.0 / 8.0));
}

TEST_CASE("sensor field validates its constants") {
    CHECK_THROWS_AS(SensorField({{0, 0}}, 0.0, 2.0, 30.0), std::invalid_argument);
    CHECK_THROWS_AS(SensorField({{0, 0}}, 50.0, -1.0, 30.0), std::invalid_argument);
    CHECK_THROWS_AS(SensorField({{0, 0}}, 50.0, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("property: sensing value is bounded and non-increasing in distance") {
    const SensorField f({{3, -2}}, 50.0, 2.0, 30.0);
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const double angle = uniform(rng, 0.0, kTwoPi);
        double prev = f.cap();
        for (double d = 0.0; d < 20.0; d += 0.05) {
            const double v = sensing_value(f, 0, {3 + d * std::cos(angle), -2 + d * std::sin(angle)});
            CHECK(v <= f.cap());
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("field intensity sums node contributions") {
    CHECK(field_intensity(SensorField({}, 50.0, 2.0, 30.0), {4, 4}) == 0.0);

    const SensorField one({{0, 2}}, 50.0, 2.0, 30.0);
    const SensorField two({{0, 2}, {0, -2}}, 50.0, 2.0, 30.0);
    CHECK(field_intensity(two, {0, 0}) == doctest::Approx(2.0 * field_intensity(one, {0, 0})));

    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        const Point x{uniform(rng, 0.0, 30.0), uniform(rng, 0.0, 22.0)};
        double sum = 0.0;
        for (const auto& n : cross.field.nodes()) {
            const double d = distance(n, x);
            sum += d == 0.0 ? 30.0 : std::min(30.0, 50.0 / (d * d));
        }
        CHECK(field_intensity(cross.field, x) == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("property: intensity is additive over disjoint node sets") {
    Rng rng(3);
    std::vector<Point> a, b;
    for (int i = 0; i < 5; ++i) a.push_back({uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)});
    for (int i = 0; i < 4; ++i) b.push_back({uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)});
    std::vector<Point> all = a;
    all.insert(all.end(), b.begin(), b.end());
    const SensorField fa(a, 50.0, 2.0, 30.0), fb(b, 50.0, 2.0, 30.0), fall(all, 50.0, 2.0, 30.0);
    for (int i = 0; i < 500; ++i) {
        const Point x{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
        CHECK(field_intensity(fall, x) == doctest::Approx(field_intensity(fa, x) + field_intensity(fb, x)));
    }
}

TEST_CASE("exposure of a straight pass matches the arctan closed form") {
    const SensorField f({{0, 5}}, 50.0, 2.0, 30.0);
    const auto path = dubins_shortest({-10, 0, 0}, {10, 0, 0}, 1.0);
    const double expected = 10.0 * (std::atan(2.0) - std::atan(-2.0));
    CHECK(expected == doctest::Approx(22.14297).epsilon(1e-6));
    CHECK(oracle::straight_pass_exposure(50.0, 5.0, -10.0, 10.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::fabs(exposure(f, path, 0.01) - expected) / expected <= 1e-4);
    CHECK(std::fabs(exposure(f, path, kDefaultExposureStep) - expected) / expected <= 1e-4);
}

TEST_CASE("exposure edge cases") {
    const SensorField f({{0, 5}}, 50.0, 2.0, 30.0);
    const auto path = dubins_shortest({-10, 0, 0}, {10, 0, 0}, 1.0);
    CHECK(exposure(f.without_nodes(), path, 0.05) == 0.0);
    CHECK(exposure(f, dubins_shortest({1, 1, 0}, {1, 1, 0}, 1.0), 0.05) == 0.0);
    CHECK(exposure(f, CompositePath{}, 0.05) == 0.0);
    CHECK_THROWS_AS((void)exposure(f, path, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)exposure(f, path, -0.1), std::invalid_argument);
}

TEST_CASE("property: halving the step stays within the estimated Simpson error") {
    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    const double cap_radius = std::sqrt(cross.field.alpha() / cross.field.cap());
    Rng rng(4);
    int smooth = 0;
    for (int i = 0; i < 200; ++i) {
        const auto path = dubins_shortest(random_pose(rng, 0.0, 30.0), random_pose(rng, 0.0, 22.0), 1.5);
        const double coarse = exposure(cross.field, path, 0.2);
        const double fine = exposure(cross.field, path, 0.1);
        const double finer = exposure(cross.field, path, 0.05);
        CHECK(std::fabs(finer - fine) <= 1e-3 * fine);

        double clearance = 1e300;
        for (double s = 0.0; s <= path.length; s += 0.01) {
            for (const auto& n : cross.field.nodes()) clearance = std::min(clearance, distance(n, sample(path, s).position()));
        }
        if (clearance <= cap_radius + 0.05) continue;  // clamped integrand has a kink
        ++smooth;
        CHECK(std::fabs(finer - fine) <= std::fabs(fine - coarse) + 1e-9 * std::max(1.0, fine));
    }
    CHECK(smooth >= 20);
}

TEST_CASE("property: exposure is additive over concatenation") {
    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        const std::vector<Pose> poses{random_pose(rng, 0.0, 22.0), random_pose(rng, 0.0, 22.0),
                                      random_pose(rng, 0.0, 22.0)};
        const std::vector<double> radii{1.0, 2.0};
        const auto tour = build_tour(poses, radii);
        const double whole = exposure(cross.field, tour, 0.05);
        const double parts = exposure(cross.field, dubins_shortest(poses[0], poses[1], 1.0), 0.05) +
                             exposure(cross.field, dubins_shortest(poses[1], poses[2], 2.0), 0.05);
        CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
    }
}

TEST_CASE("property: exposure is linear in alpha without a cap") {
    Rng rng(6);
    const std::vector<Point> nodes{{5, 5}, {12, 3}, {8, 14}};
    const SensorField f1(nodes, 50.0, 2.0, kNoCap), f2(nodes, 100.0, 2.0, kNoCap);
    for (int i = 0; i < 30; ++i) {
        const auto path = dubins_shortest(random_pose(rng, 0.0, 20.0), random_pose(rng, 0.0, 20.0), 1.0);
        CHECK(exposure(f2, path, 0.05) == doctest::Approx(2.0 * exposure(f1, path, 0.05)).epsilon(1e-9));
    }
}

TEST_CASE("property: exposure never exceeds cap times length per node") {
    const Scenario cross = generate_instance(InstanceKind::Cross, 1);
    const SensorField single({{15, 11}}, 50.0, 2.0, 30.0);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const auto path = dubins_shortest(random_pose(rng, 5.0, 25.0), random_pose(rng, 5.0, 20.0), 1.0);
        CHECK(exposure(single, path, 0.05) <= 30.0 * path.length + 1e-9);
        const double nodes = static_cast<double>(cross.field.nodes().size());
        CHECK(exposure(cross.field, path, 0.05) <= 30.0 * nodes * path.length + 1e-9);
    }
}
