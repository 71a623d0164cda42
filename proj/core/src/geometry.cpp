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

#include "medop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace medop {

namespace {

// Angles this close below 2π are treated as a zero sweep. A full turn and no
// turn reach the same pose; the shorter one is the one we want.
constexpr double kFullTurnSnap = 1e-10;

double wrap_sweep(double angle) noexcept {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi - kFullTurnSnap) a = 0.0;
    return a;
}

Pose advance(const Pose& from, SegmentKind kind, double arc, double radius) noexcept {
    const double th = from.theta();
    switch (kind) {
        case SegmentKind::Straight:
            return {from.x() + arc * std::cos(th), from.y() + arc * std::sin(th), th};
        case SegmentKind::Left: {
            const double phi = arc / radius;
            return {from.x() + radius * (std::sin(th + phi) - std::sin(th)),
                    from.y() + radius * (std::cos(th) - std::cos(th + phi)), th + phi};
        }
        case SegmentKind::Right: {
            const double phi = arc / radius;
            return {from.x() + radius * (std::sin(th) - std::sin(th - phi)),
                    from.y() + radius * (std::cos(th - phi) - std::cos(th)), th - phi};
        }
    }
    return from;
}

// Normalised problem: start at the origin, end on the positive x axis at
// distance d (in radii), headings alpha and beta relative to that axis.
struct Normalized {
    double d, alpha, beta, sa, ca, sb, cb, c_ab;
};

Normalized normalize(const Pose& start, const Pose& end, double radius) noexcept {
    const double dx = end.x() - start.x();
    const double dy = end.y() - start.y();
    const double dist = std::hypot(dx, dy);
    const double base = dist > 0.0 ? normalize_angle(std::atan2(dy, dx)) : 0.0;
    Normalized n{};
    n.d = dist / radius;
    n.alpha = normalize_angle(start.theta() - base);
    n.beta = normalize_angle(end.theta() - base);
    n.sa = std::sin(n.alpha);
    n.ca = std::cos(n.alpha);
    n.sb = std::sin(n.beta);
    n.cb = std::cos(n.beta);
    n.c_ab = std::cos(n.alpha - n.beta);
    return n;
}

// Returns normalised (t, p, q) triples; empty when the family is infeasible.
std::vector<std::array<double, 3>> family_params(const Normalized& n, DubinsFamily family) {
    std::vector<std::array<double, 3>> out;
    const double d = n.d;
    switch (family) {
        case DubinsFamily::LSL: {
            const double p2 = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb);
            if (p2 < 0.0) break;
            const double tmp = std::atan2(n.cb - n.ca, d + n.sa - n.sb);
            out.push_back({wrap_sweep(tmp - n.alpha), std::sqrt(p2), wrap_sweep(n.beta - tmp)});
            break;
        }
        case DubinsFamily::RSR: {
            const double p2 = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa);
            if (p2 < 0.0) break;
            const double tmp = std::atan2(n.ca - n.cb, d - n.sa + n.sb);
            out.push_back({wrap_sweep(n.alpha - tmp), std::sqrt(p2), wrap_sweep(tmp - n.beta)});
            break;
        }
        case DubinsFamily::LSR: {
            const double p2 = -2.0 + d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa + n.sb);
            if (p2 < 0.0) break;
            const double p = std::sqrt(p2);
            const double tmp = std::atan2(-n.ca - n.cb, d + n.sa + n.sb) - std::atan2(-2.0, p);
            out.push_back({wrap_sweep(tmp - n.alpha), p, wrap_sweep(tmp - n.beta)});
            break;
        }
        case DubinsFamily::RSL: {
            const double p2 = -2.0 + d * d + 2.0 * n.c_ab - 2.0 * d * (n.sa + n.sb);
            if (p2 < 0.0) break;
            const double p = std::sqrt(p2);
            const double tmp = std::atan2(n.ca + n.cb, d - n.sa - n.sb) - std::atan2(2.0, p);
            out.push_back({wrap_sweep(n.alpha - tmp), p, wrap_sweep(n.beta - tmp)});
            break;
        }
        case DubinsFamily::RLR: {
            const double c = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb)) / 8.0;
            if (std::abs(c) > 1.0) break;
            const double base = std::atan2(n.ca - n.cb, d - n.sa + n.sb);
            for (double p : {wrap_sweep(kTwoPi - std::acos(c)), std::acos(c)}) {
                const double t = wrap_sweep(n.alpha - base + p / 2.0);
                out.push_back({t, p, wrap_sweep(n.alpha - n.beta - t + p)});
            }
            break;
        }
        case DubinsFamily::LRL: {
            const double c = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa)) / 8.0;
            if (std::abs(c) > 1.0) break;
            const double base = std::atan2(n.ca - n.cb, d + n.sa - n.sb);
            for (double p : {wrap_sweep(kTwoPi - std::acos(c)), std::acos(c)}) {
                const double t = wrap_sweep(-n.alpha - base + p / 2.0);
                out.push_back({t, p, wrap_sweep(n.beta - n.alpha - t + p)});
            }
            break;
        }
    }
    return out;
}

double angular_gap(double a, double b) noexcept {
    const double diff = std::abs(normalize_angle(a) - normalize_angle(b));
    return std::min(diff, kTwoPi - diff);
}

}  // namespace

double normalize_angle(double theta) noexcept {
    double a = std::fmod(theta, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

double distance(const Point& a, const Point& b) noexcept { return std::hypot(b.x - a.x, b.y - a.y); }

std::string_view to_string(DubinsFamily family) noexcept {
    switch (family) {
        case DubinsFamily::LSL: return "LSL";
        case DubinsFamily::RSR: return "RSR";
        case DubinsFamily::LSR: return "LSR";
        case DubinsFamily::RSL: return "RSL";
        case DubinsFamily::RLR: return "RLR";
        case DubinsFamily::LRL: return "LRL";
    }
    return "?";
}

std::array<SegmentKind, 3> segment_kinds(DubinsFamily family) noexcept {
    using enum SegmentKind;
    switch (family) {
        case DubinsFamily::LSL: return {Left, Straight, Left};
        case DubinsFamily::RSR: return {Right, Straight, Right};
        case DubinsFamily::LSR: return {Left, Straight, Right};
        case DubinsFamily::RSL: return {Right, Straight, Left};
        case DubinsFamily::RLR: return {Right, Left, Right};
        case DubinsFamily::LRL: return {Left, Right, Left};
    }
    return {Straight, Straight, Straight};
}

DubinsPath make_dubins_path(DubinsFamily family, const Pose& start, double radius,
                            const std::array<double, 3>& seg_lengths) {
    if (!(radius > 0.0)) throw std::invalid_argument("dubins radius must be positive");
    DubinsPath path{family, radius, seg_lengths, start, 0.0};
    for (double len : seg_lengths) {
        if (!(len >= 0.0)) throw std::invalid_argument("dubins segment lengths must be non-negative");
        path.length += len;
    }
    return path;
}

Pose DubinsPath::end() const noexcept {
    const auto kinds = segment_kinds(family);
    Pose pose = start;
    for (std::size_t i = 0; i < 3; ++i) pose = advance(pose, kinds[i], seg_lengths[i], radius);
    return pose;
}

std::vector<DubinsPath> dubins_family_solutions(const Pose& start, const Pose& end, double radius,
                                                DubinsFamily family) {
    if (!(radius > 0.0)) throw std::invalid_argument("dubins radius must be positive");
    const Normalized n = normalize(start, end, radius);
    std::vector<DubinsPath> out;
    for (const auto& tpq : family_params(n, family)) {
        out.push_back(make_dubins_path(family, start, radius,
                                       {tpq[0] * radius, tpq[1] * radius, tpq[2] * radius}));
    }
    return out;
}

DubinsPath dubins_shortest(const Pose& start, const Pose& end, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("dubins radius must be positive");
    if (start.position() == end.position() && angular_gap(start.theta(), end.theta()) == 0.0) {
        return make_dubins_path(DubinsFamily::LSL, start, radius, {0.0, 0.0, 0.0});
    }
    const Normalized n = normalize(start, end, radius);
    std::optional<DubinsPath> best;
    for (DubinsFamily family : kDubinsFamilies) {
        for (const auto& tpq : family_params(n, family)) {
            const double len = (tpq[0] + tpq[1] + tpq[2]) * radius;
            if (!best || len < best->length) {
                best = make_dubins_path(family, start, radius,
                                        {tpq[0] * radius, tpq[1] * radius, tpq[2] * radius});
            }
        }
    }
    // At least one CSC family always exists for distinct poses.
    return *best;
}

Pose sample(const DubinsPath& path, double s) {
    if (!(s >= 0.0 && s <= path.length)) {
        throw std::domain_error("sample: arc length " + std::to_string(s) + " outside [0, " +
                                std::to_string(path.length) + "]");
    }
    const auto kinds = segment_kinds(path.family);
    Pose pose = path.start;
    double remaining = s;
    for (std::size_t i = 0; i < 3; ++i) {
        const double step = std::min(remaining, path.seg_lengths[i]);
        pose = advance(pose, kinds[i], step, path.radius);
        remaining -= step;
        if (remaining <= 0.0) break;
    }
    return pose;
}

CompositePath::CompositePath(std::vector<DubinsPath> curves) : curves_(std::move(curves)) {
    for (const auto& c : curves_) total_length_ += c.length;
}

void CompositePath::append(const DubinsPath& curve) {
    curves_.push_back(curve);
    total_length_ += curve.length;
}

Pose sample(const CompositePath& path, double s) {
    if (path.empty()) throw std::domain_error("sample: empty composite path");
    if (!(s >= 0.0 && s <= path.total_length())) {
        throw std::domain_error("sample: arc length " + std::to_string(s) + " outside [0, " +
                                std::to_string(path.total_length()) + "]");
    }
    const auto curves = path.curves();
    double offset = 0.0;
    for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
        if (s <= offset + curves[i].length) return sample(curves[i], s - offset);
        offset += curves[i].length;
    }
    return sample(curves.back(), std::min(s - offset, curves.back().length));
}

namespace {
void check_tour_args(std::span<const Pose> poses, std::span<const double> radii) {
    if (poses.size() < 2) throw std::invalid_argument("build_tour: need at least two poses");
    if (radii.size() != poses.size() - 1) {
        throw std::invalid_argument("build_tour: expected " + std::to_string(poses.size() - 1) +
                                    " radii, got " + std::to_string(radii.size()));
    }
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("build_tour: radii must be positive");
    }
}
}  // namespace

CompositePath build_tour(std::span<const Pose> poses, std::span<const double> radii) {
    check_tour_args(poses, radii);
    std::vector<DubinsPath> curves;
    curves.reserve(radii.size());
    for (std::size_t i = 0; i + 1 < poses.size(); ++i) {
        curves.push_back(dubins_shortest(poses[i], poses[i + 1], radii[i]));
    }
    return CompositePath(std::move(curves));
}

double tour_length(std::span<const Pose> poses, std::span<const double> radii) {
    check_tour_args(poses, radii);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < poses.size(); ++i) {
        total += dubins_shortest(poses[i], poses[i + 1], radii[i]).length;
    }
    return total;
}

}  // namespace medop
