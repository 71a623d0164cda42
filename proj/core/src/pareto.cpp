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

#include "medop/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace medop {

bool dominates(const Fitness& a, const Fitness& b) noexcept {
    return a.reward >= b.reward && a.exposure <= b.exposure &&
           (a.reward > b.reward || a.exposure < b.exposure);
}

std::vector<Front> non_dominated_sort(std::span<const Fitness> points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dominators(n, 0);
    std::vector<Front> fronts;
    Front current;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated[i].push_back(j);
                ++dominators[j];
            } else if (dominates(points[j], points[i])) {
                dominated[j].push_back(i);
                ++dominators[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dominators[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        Front next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated[i]) {
                if (--dominators[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<Front> survival_layers(std::span<const Fitness> points) {
    std::vector<Front> layers;
    for (auto& front : non_dominated_sort(points)) {
        Front unique;
        Front repeats;
        for (std::size_t i : front) {
            const bool seen = std::any_of(unique.begin(), unique.end(), [&](std::size_t u) {
                return points[u].reward == points[i].reward && points[u].exposure == points[i].exposure;
            });
            (seen ? repeats : unique).push_back(i);
        }
        layers.push_back(std::move(unique));
        if (!repeats.empty()) layers.push_back(std::move(repeats));
    }
    return layers;
}

double hypervolume_2d(std::span<const Fitness> points, HypervolumeReference reference) {
    std::vector<Fitness> sorted(points.begin(), points.end());
    for (const auto& p : sorted) {
        if (!dominates(p, Fitness{reference.reward, reference.exposure, 0.0})) {
            throw std::invalid_argument("hypervolume_2d: point does not dominate the reference");
        }
    }
    std::sort(sorted.begin(), sorted.end(), [](const Fitness& a, const Fitness& b) {
        return a.reward != b.reward ? a.reward > b.reward : a.exposure < b.exposure;
    });
    double area = 0.0;
    double ceiling = reference.exposure;
    for (const auto& p : sorted) {
        if (p.exposure < ceiling) {
            area += (p.reward - reference.reward) * (ceiling - p.exposure);
            ceiling = p.exposure;
        }
    }
    return area;
}

Extremes extremes(std::span<const Fitness> points) {
    if (points.empty()) throw std::invalid_argument("extremes: empty front");
    Extremes e{{points[0].reward, points[0].reward},
               {points[0].exposure, points[0].exposure},
               {points[0].length, points[0].length}};
    for (const auto& p : points) {
        e.reward = {std::min(e.reward.min, p.reward), std::max(e.reward.max, p.reward)};
        e.exposure = {std::min(e.exposure.min, p.exposure), std::max(e.exposure.max, p.exposure)};
        e.length = {std::min(e.length.min, p.length), std::max(e.length.max, p.length)};
    }
    return e;
}

std::vector<double> crowding_distance(std::span<const Fitness> points, std::span<const std::size_t> members) {
    const std::size_t m = members.size();
    std::vector<double> dist(m, 0.0);
    if (m <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    std::vector<std::size_t> order(m);
    auto accumulate = [&](auto objective) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return objective(points[members[a]]) < objective(points[members[b]]);
        });
        const double lo = objective(points[members[order.front()]]);
        const double hi = objective(points[members[order.back()]]);
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi - lo <= 0.0) return;
        for (std::size_t k = 1; k + 1 < m; ++k) {
            const double gap = objective(points[members[order[k + 1]]]) - objective(points[members[order[k - 1]]]);
            dist[order[k]] += gap / (hi - lo);
        }
    };
    accumulate([](const Fitness& f) { return f.reward; });
    accumulate([](const Fitness& f) { return f.exposure; });
    return dist;
}

std::vector<std::array<double, 2>> reference_directions(std::size_t divisions) {
    if (divisions == 0) throw std::invalid_argument("reference_directions: need at least one division");
    std::vector<std::array<double, 2>> dirs;
    dirs.reserve(divisions + 1);
    for (std::size_t k = 0; k <= divisions; ++k) {
        const double w = static_cast<double>(k) / static_cast<double>(divisions);
        dirs.push_back({w, 1.0 - w});
    }
    return dirs;
}

namespace {

struct Association {
    std::size_t direction;
    double distance;
};

// Layers are consumed whole until the next one no longer fits. Returns the
// index of the layer that must be truncated, or layers.size().
std::size_t fill_whole_layers(const std::vector<Front>& layers, std::size_t count, Survivors& out) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (out.indices.size() + layers[l].size() > count) return l;
        for (std::size_t i : layers[l]) {
            out.indices.push_back(i);
            out.rank.push_back(l);
        }
        if (out.indices.size() == count) return layers.size();
    }
    return layers.size();
}

}  // namespace

Survivors select_by_reference_points(std::span<const Fitness> points, std::size_t count, Rng& rng) {
    Survivors out;
    count = std::min(count, points.size());
    if (count == 0) return out;
    const auto layers = survival_layers(points);
    const std::size_t last = fill_whole_layers(layers, count, out);

    // Minimisation objectives (-reward, exposure), scaled by the first front.
    std::array<double, 2> ideal{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    std::array<double, 2> nadir{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i : layers.front()) {
        const std::array<double, 2> f{-points[i].reward, points[i].exposure};
        for (int k = 0; k < 2; ++k) {
            ideal[k] = std::min(ideal[k], f[k]);
            nadir[k] = std::max(nadir[k], f[k]);
        }
    }
    std::array<double, 2> scale{};
    for (int k = 0; k < 2; ++k) scale[k] = nadir[k] - ideal[k] > 1e-12 ? nadir[k] - ideal[k] : 1.0;

    const auto dirs = reference_directions(std::max<std::size_t>(count, 2) - 1);
    std::vector<std::array<double, 2>> unit(dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        const double norm = std::hypot(dirs[j][0], dirs[j][1]);
        unit[j] = {dirs[j][0] / norm, dirs[j][1] / norm};
    }
    auto associate = [&](std::size_t i) {
        const double f0 = (-points[i].reward - ideal[0]) / scale[0];
        const double f1 = (points[i].exposure - ideal[1]) / scale[1];
        Association best{0, std::numeric_limits<double>::infinity()};
        for (std::size_t j = 0; j < unit.size(); ++j) {
            const double proj = f0 * unit[j][0] + f1 * unit[j][1];
            const double d = std::sqrt(std::max(0.0, f0 * f0 + f1 * f1 - proj * proj));
            if (d < best.distance) best = {j, d};
        }
        return best;
    };

    std::vector<std::size_t> niche(dirs.size(), 0);
    std::vector<std::size_t> chosen_dir;
    chosen_dir.reserve(count);
    for (std::size_t i : out.indices) {
        const auto a = associate(i);
        ++niche[a.direction];
        chosen_dir.push_back(a.direction);
    }

    if (last < layers.size()) {
        std::vector<std::size_t> pending = layers[last];
        std::vector<Association> pending_assoc;
        for (std::size_t i : pending) pending_assoc.push_back(associate(i));
        std::vector<bool> excluded(dirs.size(), false);
        std::vector<std::size_t> candidates;
        while (out.indices.size() < count && !pending.empty()) {
            std::size_t min_niche = std::numeric_limits<std::size_t>::max();
            candidates.clear();
            for (std::size_t j = 0; j < dirs.size(); ++j) {
                if (excluded[j]) continue;
                if (niche[j] < min_niche) {
                    min_niche = niche[j];
                    candidates.clear();
                }
                if (niche[j] == min_niche) candidates.push_back(j);
            }
            const std::size_t dir = candidates[uniform_index(rng, candidates.size())];
            std::vector<std::size_t> members;
            for (std::size_t k = 0; k < pending.size(); ++k) {
                if (pending_assoc[k].direction == dir) members.push_back(k);
            }
            if (members.empty()) {
                excluded[dir] = true;
                continue;
            }
            std::size_t pick = members.front();
            if (niche[dir] == 0) {
                for (std::size_t k : members) {
                    if (pending_assoc[k].distance < pending_assoc[pick].distance) pick = k;
                }
            } else {
                pick = members[uniform_index(rng, members.size())];
            }
            out.indices.push_back(pending[pick]);
            out.rank.push_back(last);
            chosen_dir.push_back(dir);
            ++niche[dir];
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
            pending_assoc.erase(pending_assoc.begin() + static_cast<std::ptrdiff_t>(pick));
        }
    }

    out.diversity.reserve(out.indices.size());
    for (std::size_t dir : chosen_dir) out.diversity.push_back(-static_cast<double>(niche[dir]));
    return out;
}

Survivors select_by_crowding(std::span<const Fitness> points, std::size_t count) {
    Survivors out;
    count = std::min(count, points.size());
    if (count == 0) return out;
    const auto layers = survival_layers(points);
    const std::size_t last = fill_whole_layers(layers, count, out);
    if (last < layers.size()) {
        const Front& layer = layers[last];
        const auto dist = crowding_distance(points, layer);
        std::vector<std::size_t> order(layer.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
        for (std::size_t k = 0; out.indices.size() < count; ++k) {
            out.indices.push_back(layer[order[k]]);
            out.rank.push_back(last);
        }
    }
    // Crowding among the survivors of each layer.
    out.diversity.assign(out.indices.size(), 0.0);
    std::size_t begin = 0;
    while (begin < out.indices.size()) {
        std::size_t end = begin;
        while (end < out.indices.size() && out.rank[end] == out.rank[begin]) ++end;
        const std::span<const std::size_t> members(out.indices.data() + begin, end - begin);
        const auto dist = crowding_distance(points, members);
        std::copy(dist.begin(), dist.end(), out.diversity.begin() + static_cast<std::ptrdiff_t>(begin));
        begin = end;
    }
    return out;
}

std::vector<Fitness> ParetoFront::fitnesses() const {
    std::vector<Fitness> out;
    out.reserve(solutions.size());
    for (const auto& s : solutions) out.push_back(s.fitness);
    return out;
}

Extremes extremes(const ParetoFront& front) { return extremes(std::span<const Fitness>(front.fitnesses())); }

}  // namespace medop
