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

#include "medop/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "medop/evolution.hpp"
#include "medop/sensing.hpp"

namespace medop::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi - 1e-12) a = 0.0;
    return a;
}

double angle_error(double a, double b) {
    const double d = wrap(a - b);
    return std::min(d, 2.0 * kPi - d);
}

struct Vec {
    double x, y;
};
Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double k, Vec a) { return {k * a.x, k * a.y}; }
double norm(Vec a) { return std::hypot(a.x, a.y); }
double heading_of(Vec a) { return std::atan2(a.y, a.x); }

// Turning circle centres; +1 for a left turn, -1 for a right turn.
Vec centre(const Pose& p, int side, double r) {
    return {p.x() - side * r * std::sin(p.theta()), p.y() + side * r * std::cos(p.theta())};
}

// Heading of a vehicle at point q travelling on the circle centred at c.
double heading_on_circle(Vec q, Vec c, int side) {
    const Vec d = q - c;
    return side > 0 ? std::atan2(d.x, -d.y) : std::atan2(-d.x, d.y);
}

SegmentKind kind_of(int side) { return side > 0 ? SegmentKind::Left : SegmentKind::Right; }

struct Construction {
    std::string family;
    std::array<SegmentKind, 3> kinds;
    std::array<double, 3> lengths;
};

std::vector<Construction> constructions(const Pose& a, const Pose& b, double r) {
    std::vector<Construction> out;
    // CSC
    for (int s1 : {1, -1}) {
        for (int s2 : {1, -1}) {
            const Vec c1 = centre(a, s1, r);
            const Vec c2 = centre(b, s2, r);
            const Vec v = c2 - c1;
            const double dist = norm(v);
            double h = 0.0;
            double straight = 0.0;
            if (s1 == s2) {
                straight = dist;
                h = dist > 0.0 ? heading_of(v) : a.theta();
            } else {
                if (dist < 2.0 * r) continue;
                straight = std::sqrt(std::max(0.0, dist * dist - 4.0 * r * r));
                h = heading_of(v) + s1 * std::atan2(2.0 * r, straight);
            }
            const double first = s1 > 0 ? wrap(h - a.theta()) : wrap(a.theta() - h);
            const double last = s2 > 0 ? wrap(b.theta() - h) : wrap(h - b.theta());
            std::string name = std::string(s1 > 0 ? "L" : "R") + "S" + (s2 > 0 ? "L" : "R");
            out.push_back({name, {kind_of(s1), SegmentKind::Straight, kind_of(s2)}, {first * r, straight, last * r}});
        }
    }
    // CCC
    for (int side : {1, -1}) {
        const Vec c1 = centre(a, side, r);
        const Vec c2 = centre(b, side, r);
        const Vec v = c2 - c1;
        const double dist = norm(v);
        if (dist > 4.0 * r) continue;
        const double half = dist / 2.0;
        const double off = std::sqrt(std::max(0.0, 4.0 * r * r - half * half));
        const Vec mid = c1 + 0.5 * v;
        const Vec n = dist > 0.0 ? Vec{-v.y / dist, v.x / dist} : Vec{0.0, 1.0};
        for (double sign : {1.0, -1.0}) {
            const Vec c3 = mid + (sign * off) * n;
            const Vec m1 = 0.5 * (c1 + c3);
            const Vec m2 = 0.5 * (c3 + c2);
            const double h1 = heading_on_circle(m1, c1, side);
            const double h2 = heading_on_circle(m2, c2, side);
            double first, middle, last;
            if (side > 0) {
                first = wrap(h1 - a.theta());
                middle = wrap(h1 - h2);
                last = wrap(b.theta() - h2);
            } else {
                first = wrap(a.theta() - h1);
                middle = wrap(h2 - h1);
                last = wrap(h2 - b.theta());
            }
            out.push_back({side > 0 ? "LRL" : "RLR", {kind_of(side), kind_of(-side), kind_of(side)},
                           {first * r, middle * r, last * r}});
        }
    }
    return out;
}

}  // namespace

Pose integrate_segments(const Pose& start, std::span<const SegmentKind> kinds, std::span<const double> lengths,
                        double radius) {
    double x = start.x();
    double y = start.y();
    double th = start.theta();
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const double curvature = kinds[i] == SegmentKind::Left    ? 1.0 / radius
                                 : kinds[i] == SegmentKind::Right ? -1.0 / radius
                                                                  : 0.0;
        const double len = lengths[i];
        if (len <= 0.0) continue;
        // Steps of at most 0.05 rad of turning keep RK4 well below 1e-7 m.
        const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(len * std::abs(curvature) / 0.05)));
        const double h = len / static_cast<double>(steps);
        for (std::size_t k = 0; k < steps; ++k) {
            auto f = [&](double theta) { return std::array<double, 3>{std::cos(theta), std::sin(theta), curvature}; };
            const auto k1 = f(th);
            const auto k2 = f(th + 0.5 * h * k1[2]);
            const auto k3 = f(th + 0.5 * h * k2[2]);
            const auto k4 = f(th + h * k3[2]);
            x += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
            th += h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
        }
    }
    return {x, y, th};
}

std::vector<DubinsCandidate> dubins_candidates(const Pose& start, const Pose& end, double radius, double tolerance) {
    std::vector<DubinsCandidate> out;
    for (const auto& c : constructions(start, end, radius)) {
        const Pose reached = integrate_segments(start, c.kinds, c.lengths, radius);
        const double err = std::max(std::hypot(reached.x() - end.x(), reached.y() - end.y()),
                                    angle_error(reached.theta(), end.theta()));
        if (err < tolerance) out.push_back({c.family, c.lengths[0] + c.lengths[1] + c.lengths[2], err});
    }
    return out;
}

double chord_length(const DubinsPath& path, double step) {
    if (path.length <= 0.0) return 0.0;
    const auto n = static_cast<std::size_t>(std::ceil(path.length / step));
    double total = 0.0;
    Point prev = path.start.position();
    for (std::size_t i = 1; i <= n; ++i) {
        const double s = i == n ? path.length : path.length * static_cast<double>(i) / static_cast<double>(n);
        const Point p = sample(path, s).position();
        total += std::hypot(p.x - prev.x, p.y - prev.y);
        prev = p;
    }
    return total;
}

double straight_pass_exposure(double alpha, double offset, double t0, double t1) {
    return alpha / offset * (std::atan(t1 / offset) - std::atan(t0 / offset));
}

std::vector<std::size_t> brute_force_ranks(std::span<const Fitness> points) {
    const std::size_t n = points.size();
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> rank(n, unset);
    std::size_t assigned = 0;
    for (std::size_t level = 0; assigned < n; ++level) {
        std::vector<std::size_t> layer;
        for (std::size_t i = 0; i < n; ++i) {
            if (rank[i] != unset) continue;
            bool beaten = false;
            for (std::size_t j = 0; j < n && !beaten; ++j) {
                if (j == i || rank[j] != unset) continue;
                const auto& p = points[j];
                const auto& q = points[i];
                beaten = p.reward >= q.reward && p.exposure <= q.exposure &&
                         (p.reward != q.reward || p.exposure != q.exposure);
            }
            if (!beaten) layer.push_back(i);
        }
        for (std::size_t i : layer) rank[i] = level;
        assigned += layer.size();
    }
    return rank;
}

double bessel_i(int order, double x) {
    const double half = x / 2.0;
    double term = std::pow(half, order) / std::tgamma(order + 1.0);
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= half * half / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

double von_mises_density(double x, double mean, double kappa) {
    return std::exp(kappa * std::cos(x - mean)) / (2.0 * kPi * bessel_i(0, kappa));
}

double von_mises_mass(double a, double b, double mean, double kappa) {
    constexpr int panels = 200;
    const double h = (b - a) / panels;
    double sum = von_mises_density(a, mean, kappa) + von_mises_density(b, mean, kappa);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * von_mises_density(a + i * h, mean, kappa);
    return sum * h / 3.0;
}

double chi_square_critical_99(std::size_t dof) {
    constexpr double z99 = 2.3263478740408408;
    const double k = static_cast<double>(dof);
    const double c = 2.0 / (9.0 * k);
    return k * std::pow(1.0 - c + z99 * std::sqrt(c), 3.0);
}

MonteCarloEstimate hypervolume_monte_carlo(std::span<const Fitness> points, HypervolumeReference reference,
                                           std::size_t samples, Rng& rng) {
    double r_hi = reference.reward;
    double e_lo = reference.exposure;
    for (const auto& p : points) {
        r_hi = std::max(r_hi, p.reward);
        e_lo = std::min(e_lo, p.exposure);
    }
    const double box = (r_hi - reference.reward) * (reference.exposure - e_lo);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double r = uniform(rng, reference.reward, r_hi);
        const double e = uniform(rng, e_lo, reference.exposure);
        for (const auto& p : points) {
            if (p.reward >= r && p.exposure <= e) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    return {frac * box, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples))};
}

namespace {

CheckResult check_dubins(const CheckOptions& opt) {
    const std::size_t n = opt.n ? opt.n : 10000;
    Rng rng(opt.seed);
    double worst_endpoint = 0.0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Pose a{uniform(rng, -20, 20), uniform(rng, -20, 20), uniform(rng, 0, 2 * kPi)};
        const Pose b{uniform(rng, -20, 20), uniform(rng, -20, 20), uniform(rng, 0, 2 * kPi)};
        const double r = uniform(rng, 0.5, 4.0);
        const DubinsPath path = dubins_shortest(a, b, r);
        const Pose reached = sample(path, path.length);
        const double endpoint = std::max(std::hypot(reached.x() - b.x(), reached.y() - b.y()),
                                         angle_error(reached.theta(), b.theta()));
        const auto candidates = dubins_candidates(a, b, r);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) best = std::min(best, c.length);
        const double excess = path.length - best;
        worst_endpoint = std::max(worst_endpoint, endpoint);
        worst_excess = std::max(worst_excess, excess);
        if (endpoint >= 1e-6 || !(excess <= 1e-9)) ++failures;
    }
    std::ostringstream d;
    d << n << " pairs, max endpoint error " << worst_endpoint << ", max excess over oracle " << worst_excess
      << ", failures " << failures;
    return {"dubins", failures == 0, d.str()};
}

CheckResult check_exposure(const CheckOptions&) {
    const SensorField field({{0.0, 5.0}}, 50.0, 2.0, 30.0);
    const CompositePath path({dubins_shortest({-10, 0, 0}, {10, 0, 0}, 1.0)});
    const double got = exposure(field, path, 0.01);
    const double expected = straight_pass_exposure(50.0, 5.0, -10.0, 10.0);
    const double rel = std::abs(got - expected) / expected;
    std::ostringstream d;
    d.precision(10);
    d << "quadrature " << got << " vs closed form " << expected << ", relative error " << rel;
    return {"exposure-arctan", rel <= 1e-4, d.str()};
}

CheckResult check_dominance(const CheckOptions& opt) {
    const std::size_t n = opt.n ? opt.n : 500;
    Rng rng(opt.seed);
    std::vector<Fitness> pts;
    for (std::size_t i = 0; i < n; ++i) {
        // Coarse grid values force ties and duplicates into the sample.
        pts.push_back({std::round(uniform(rng, 0, 40)) / 4.0, std::round(uniform(rng, 0, 200)), 0.0});
    }
    const auto ranks = brute_force_ranks(pts);
    const auto fronts = non_dominated_sort(pts);
    std::vector<std::size_t> got(n, std::numeric_limits<std::size_t>::max());
    std::size_t covered = 0;
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (std::size_t i : fronts[f]) {
            got[i] = f;
            ++covered;
        }
    }
    const bool ok = covered == n && got == ranks;
    std::ostringstream d;
    d << n << " points, " << fronts.size() << " fronts, " << (ok ? "identical" : "MISMATCH") << " to brute force";
    return {"dominance", ok, d.str()};
}

CheckResult check_von_mises(const CheckOptions& opt) {
    const std::size_t n = opt.n ? opt.n : 100000;
    constexpr double kappa = 2.0;
    constexpr double mean = 1.0;
    Rng rng(opt.seed);
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = sample_von_mises(mean, kappa, rng);
        c += std::cos(x);
        s += std::sin(x);
    }
    const double resultant = std::hypot(c, s) / static_cast<double>(n);
    const double expected = bessel_i(1, kappa) / bessel_i(0, kappa);

    constexpr std::size_t bins = 50;
    const std::size_t draws = 10 * n;
    std::vector<std::size_t> counts(bins, 0);
    for (std::size_t i = 0; i < draws; ++i) {
        const double x = sample_von_mises(mean, kappa, rng);
        counts[std::min(bins - 1, static_cast<std::size_t>(x / (2 * kPi) * bins))]++;
    }
    double chi2 = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        const double lo = 2 * kPi * static_cast<double>(b) / bins;
        const double hi = 2 * kPi * static_cast<double>(b + 1) / bins;
        const double exp_count = von_mises_mass(lo, hi, mean, kappa) * static_cast<double>(draws);
        chi2 += (static_cast<double>(counts[b]) - exp_count) * (static_cast<double>(counts[b]) - exp_count) / exp_count;
    }
    const double critical = chi_square_critical_99(bins - 1);
    const bool ok = std::abs(resultant - expected) <= 0.01 && chi2 <= critical;
    std::ostringstream d;
    d << "mean resultant " << resultant << " vs I1/I0 " << expected << "; chi2 " << chi2 << " (critical "
      << critical << ", " << draws << " draws)";
    return {"von-mises", ok, d.str()};
}

CheckResult check_hypervolume(const CheckOptions& opt) {
    const std::size_t n = opt.n ? opt.n : 50;
    Rng rng(opt.seed);
    std::vector<Fitness> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({uniform(rng, 0.1, 10.0), uniform(rng, 0.0, 90.0), 0.0});
    const HypervolumeReference ref{0.0, 100.0};
    const double exact = hypervolume_2d(pts, ref);
    const auto mc = hypervolume_monte_carlo(pts, ref, 1000000, rng);
    const bool ok = std::abs(exact - mc.value) <= 3.0 * mc.standard_error;
    std::ostringstream d;
    d << "sweep " << exact << " vs Monte Carlo " << mc.value << " +/- " << mc.standard_error;
    return {"hypervolume", ok, d.str()};
}

}  // namespace

std::vector<std::string> check_names() { return {"dubins", "exposure-arctan", "dominance", "von-mises", "hypervolume"}; }

CheckResult run_check(const std::string& name, const CheckOptions& options) {
    if (name == "dubins") return check_dubins(options);
    if (name == "exposure-arctan") return check_exposure(options);
    if (name == "dominance") return check_dominance(options);
    if (name == "von-mises") return check_von_mises(options);
    if (name == "hypervolume") return check_hypervolume(options);
    throw std::invalid_argument("unknown oracle check '" + name + "'");
}

}  // namespace medop::oracle
