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

#include "medop/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace medop {

namespace {

// alpha / d^mu from the squared distance, clamped at cap.
inline double attenuated(double alpha, double mu, double cap, double dist2) noexcept {
    if (dist2 <= 0.0) return cap;
    const double raw = mu == 2.0 ? alpha / dist2 : alpha / std::pow(dist2, 0.5 * mu);
    return std::min(cap, raw);
}

}  // namespace

SensorField::SensorField(std::vector<Point> nodes, double alpha, double mu, double cap)
    : nodes_(std::move(nodes)), alpha_(alpha), mu_(mu), cap_(cap) {
    if (!(alpha_ > 0.0)) throw std::invalid_argument("sensing.alpha must be positive");
    if (!(mu_ > 0.0)) throw std::invalid_argument("sensing.mu must be positive");
    if (!(cap_ > 0.0)) throw std::invalid_argument("sensing.cap must be positive");
    for (const auto& n : nodes_) {
        if (!std::isfinite(n.x) || !std::isfinite(n.y)) {
            throw std::invalid_argument("sensor node coordinates must be finite");
        }
    }
}

SensorField SensorField::without_nodes() const { return SensorField({}, alpha_, mu_, cap_); }

double sensing_value(const SensorField& field, std::size_t node_index, const Point& x) {
    if (node_index >= field.nodes().size()) throw std::out_of_range("sensing_value: node index");
    const Point& n = field.nodes()[node_index];
    const double dx = n.x - x.x;
    const double dy = n.y - x.y;
    return attenuated(field.alpha(), field.mu(), field.cap(), dx * dx + dy * dy);
}

double field_intensity(const SensorField& field, const Point& x) noexcept {
    double total = 0.0;
    for (const auto& n : field.nodes()) {
        const double dx = n.x - x.x;
        const double dy = n.y - x.y;
        total += attenuated(field.alpha(), field.mu(), field.cap(), dx * dx + dy * dy);
    }
    return total;
}

double exposure(const SensorField& field, const DubinsPath& curve, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("exposure: step must be positive");
    if (field.empty() || curve.length <= 0.0) return 0.0;

    // Panels never straddle an arc/straight junction, where the integrand
    // loses smoothness.
    double total = 0.0;
    double offset = 0.0;
    for (double len : curve.seg_lengths) {
        if (len <= 0.0) continue;
        auto panels = static_cast<std::size_t>(std::ceil(len / step));
        panels = std::max<std::size_t>(panels, 2);
        if (panels % 2 == 1) ++panels;
        const double h = len / static_cast<double>(panels);
        const double end = std::min(offset + len, curve.length);
        double sum = 0.0;
        for (std::size_t i = 0; i <= panels; ++i) {
            const double s = i == panels ? end : offset + h * static_cast<double>(i);
            const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            sum += w * field_intensity(field, sample(curve, s).position());
        }
        total += sum * h / 3.0;
        offset += len;
    }
    return total;
}

double exposure(const SensorField& field, const CompositePath& path, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("exposure: step must be positive");
    double total = 0.0;
    for (const auto& curve : path.curves()) total += exposure(field, curve, step);
    return total;
}

}  // namespace medop
