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

#include "medop/app/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "medop/sensing.hpp"

namespace medop::app {

using nlohmann::json;

std::vector<TourStop> to_stops(const Tour& tour, const Scenario& scenario) {
    std::vector<TourStop> stops;
    for (std::size_t k = 0; k < tour.order.size(); ++k) {
        TourStop stop{scenario.locations[tour.order[k]].id, tour.poses[k].theta(), std::nullopt};
        if (k < tour.radii.size()) stop.radius = tour.radii[k];
        stops.push_back(stop);
    }
    return stops;
}

Tour from_stops(const std::vector<TourStop>& stops, const Scenario& scenario) {
    if (stops.size() < 2) throw std::invalid_argument("tour needs at least the start and the goal");
    Tour tour;
    for (std::size_t k = 0; k < stops.size(); ++k) {
        const auto& stop = stops[k];
        const std::size_t idx = scenario.index_of(stop.id);
        if (std::find(tour.order.begin(), tour.order.end(), idx) != tour.order.end()) {
            throw std::invalid_argument("location " + std::to_string(stop.id) + " visited twice");
        }
        if (!(stop.heading >= 0.0 && stop.heading < kTwoPi)) {
            throw std::invalid_argument("heading of location " + std::to_string(stop.id) + " outside [0, 2pi)");
        }
        tour.order.push_back(idx);
        tour.poses.emplace_back(scenario.locations[idx].position, stop.heading);
        if (k + 1 < stops.size()) {
            if (!stop.radius) throw std::invalid_argument("missing radius at location " + std::to_string(stop.id));
            if (!(*stop.radius >= scenario.rho_min && *stop.radius <= scenario.rho_max)) {
                throw std::invalid_argument("radius at location " + std::to_string(stop.id) +
                                            " outside [rho_min, rho_max]");
            }
            tour.radii.push_back(*stop.radius);
        }
    }
    if (tour.order.front() != scenario.start_index()) throw std::invalid_argument("tour must begin at the start");
    if (tour.order.back() != scenario.goal_index()) throw std::invalid_argument("tour must end at the goal");
    return tour;
}

RunReport make_report(const Scenario& scenario, const SolverParams& params, const EvolveResult& result,
                      double duration_seconds) {
    RunReport report{scenario, params, result.history, {}, duration_seconds};
    for (const auto& s : result.front.solutions) {
        report.front.push_back({s.fitness, to_stops(decode(s.chromosome, scenario), scenario)});
    }
    return report;
}

namespace {

json stops_to_json(const std::vector<TourStop>& stops) {
    json arr = json::array();
    for (const auto& s : stops) {
        json j = {{"id", s.id}, {"heading", s.heading}};
        if (s.radius) j["radius"] = *s.radius;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<TourStop> stops_from(const json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("tour must be an array of stops");
    std::vector<TourStop> stops;
    for (const auto& j : arr) {
        TourStop s;
        s.id = j.at("id").get<int>();
        s.heading = j.at("heading").get<double>();
        if (auto it = j.find("radius"); it != j.end() && !it->is_null()) s.radius = it->get<double>();
        stops.push_back(s);
    }
    return stops;
}

}  // namespace

std::string to_json(const RunReport& r) {
    json doc;
    doc["scenario_name"] = r.scenario.name;
    doc["scenario"] = json::parse(save_scenario(r.scenario));
    const auto& p = r.params;
    doc["params"] = {{"population_size", p.population_size},
                     {"generations", p.generations},
                     {"crossover_prob", p.crossover_prob},
                     {"mutation_prob_individual", p.mutation_prob_individual},
                     {"mutation_prob_gene", p.mutation_prob_gene},
                     {"von_mises_kappa", p.von_mises_kappa},
                     {"selection", std::string(to_string(p.selection))},
                     {"seed", p.seed},
                     {"single_objective", p.single_objective},
                     {"alignment_mutation", p.alignment_mutation},
                     {"exposure_step", p.exposure_step}};
    doc["seed"] = p.seed;
    json history = json::array();
    for (const auto& h : r.history) {
        history.push_back({{"generation", h.generation},
                           {"front_size", h.front_size},
                           {"hypervolume", h.hypervolume},
                           {"best_reward", h.best_reward},
                           {"min_exposure", h.min_exposure}});
    }
    doc["history"] = std::move(history);
    json front = json::array();
    for (const auto& s : r.front) {
        front.push_back({{"reward", s.fitness.reward},
                         {"exposure", s.fitness.exposure},
                         {"length", s.fitness.length},
                         {"tour", stops_to_json(s.tour)}});
    }
    doc["front"] = std::move(front);
    doc["duration_seconds"] = r.duration_seconds;
    return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    const json doc = json::parse(text);
    RunReport r;
    r.scenario = load_scenario(doc.at("scenario").dump());
    const json& p = doc.at("params");
    r.params.population_size = p.at("population_size").get<std::size_t>();
    r.params.generations = p.at("generations").get<std::size_t>();
    r.params.crossover_prob = p.at("crossover_prob").get<double>();
    r.params.mutation_prob_individual = p.at("mutation_prob_individual").get<double>();
    r.params.mutation_prob_gene = p.at("mutation_prob_gene").get<double>();
    r.params.von_mises_kappa = p.at("von_mises_kappa").get<double>();
    r.params.selection =
        parse_selection_method(p.at("selection").get<std::string>()).value_or(SelectionMethod::ReferencePoint);
    r.params.seed = p.at("seed").get<std::uint64_t>();
    r.params.single_objective = p.at("single_objective").get<bool>();
    r.params.alignment_mutation = p.at("alignment_mutation").get<bool>();
    r.params.exposure_step = p.at("exposure_step").get<double>();
    for (const auto& h : doc.at("history")) {
        r.history.push_back({h.at("generation").get<std::size_t>(), h.at("front_size").get<std::size_t>(),
                             h.at("hypervolume").get<double>(), h.at("best_reward").get<double>(),
                             h.at("min_exposure").get<double>()});
    }
    for (const auto& s : doc.at("front")) {
        r.front.push_back({{s.at("reward").get<double>(), s.at("exposure").get<double>(), s.at("length").get<double>()},
                           stops_from(s.at("tour"))});
    }
    r.duration_seconds = doc.value("duration_seconds", 0.0);
    return r;
}

RunReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open report " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return report_from_json(buf.str());
}

std::vector<TourStop> stops_from_json(const std::string& text) {
    const json doc = json::parse(text);
    return stops_from(doc.is_object() ? doc.at("tour") : doc);
}

std::string front_csv(const std::vector<ReportSolution>& front) {
    std::string out = "reward,exposure,length\n";
    for (const auto& s : front) {
        out += fmt::format("{:.6g},{:.6g},{:.6g}\n", s.fitness.reward, s.fitness.exposure, s.fitness.length);
    }
    return out;
}

std::vector<Point> trace_tour(const Tour& tour, double step) {
    std::vector<Point> pts;
    const CompositePath path = tour.path();
    pts.push_back(tour.poses.front().position());
    for (const auto& curve : path.curves()) {
        if (curve.length <= 0.0) continue;
        const auto n = static_cast<std::size_t>(std::ceil(curve.length / step));
        for (std::size_t i = 1; i <= n; ++i) {
            const double s = i == n ? curve.length : curve.length * static_cast<double>(i) / static_cast<double>(n);
            pts.push_back(sample(curve, s).position());
        }
    }
    return pts;
}

std::string render_svg(const Scenario& scenario, const Tour& tour, const Fitness& fitness) {
    constexpr double kScale = 20.0;   // px per metre
    constexpr double kMargin = 2.0;   // metres
    constexpr double kCell = 0.5;     // heat-layer resolution, metres
    const auto trace = trace_tour(tour, 0.05);

    double x0 = trace.front().x, x1 = x0, y0 = trace.front().y, y1 = y0;
    auto grow = [&](const Point& p) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const auto& p : trace) grow(p);
    for (const auto& l : scenario.locations) grow(l.position);
    for (const auto& n : scenario.field.nodes()) grow(n);
    x0 -= kMargin;
    y0 -= kMargin;
    x1 += kMargin;
    y1 += kMargin;
    const double title_px = 30.0;
    const double width = (x1 - x0) * kScale;
    const double height = (y1 - y0) * kScale + title_px;

    std::string svg;
    svg += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
        width, height, width, height);
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += fmt::format("<text x=\"{:.1f}\" y=\"20\" font-family=\"sans-serif\" font-size=\"16\" "
                       "text-anchor=\"middle\">R={:.2f}, E={:.2f}, L={:.2f}</text>\n",
                       width / 2.0, fitness.reward, fitness.exposure, fitness.length);
    // World frame: metres, y up.
    svg += fmt::format("<g transform=\"matrix({:.4f} 0 0 {:.4f} {:.4f} {:.4f})\">\n", kScale, -kScale, -x0 * kScale,
                       y1 * kScale + title_px);

    if (!scenario.field.empty()) {
        const double peak = scenario.field.cap() * static_cast<double>(scenario.field.nodes().size());
        svg += "<g class=\"intensity\" fill=\"rgb(220,40,30)\">\n";
        for (double y = y0; y < y1; y += kCell) {
            for (double x = x0; x < x1; x += kCell) {
                const double v = field_intensity(scenario.field, {x + kCell / 2, y + kCell / 2});
                const double opacity = std::min(1.0, std::sqrt(v / peak) * 1.5);
                if (opacity < 0.01) continue;
                svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                                   "fill-opacity=\"{:.3f}\"/>\n",
                                   x, y, kCell, kCell, opacity);
            }
        }
        svg += "</g>\n";
        svg += "<g class=\"sensors\" fill=\"black\">\n";
        for (const auto& n : scenario.field.nodes()) {
            svg += fmt::format("<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"0.25\"/>\n", n.x, n.y);
        }
        svg += "</g>\n";
    }

    svg += "<g class=\"targets\" fill=\"rgb(40,90,200)\" stroke=\"none\">\n";
    for (std::size_t i = 1; i + 1 < scenario.size(); ++i) {
        const auto& l = scenario.locations[i];
        const double side = 0.3 + 0.5 * l.reward;
        svg += fmt::format("<rect x=\"{:.4f}\" y=\"{:.4f}\" width=\"{:.4f}\" height=\"{:.4f}\"/>\n",
                           l.position.x - side / 2, l.position.y - side / 2, side, side);
    }
    svg += "</g>\n";

    std::string points;
    for (const auto& p : trace) points += fmt::format("{:.4f},{:.4f} ", p.x, p.y);
    if (!points.empty()) points.pop_back();
    svg += "<polyline class=\"path\" fill=\"none\" stroke=\"black\" stroke-width=\"0.08\" points=\"" + points +
           "\"/>\n";

    const Point s = scenario.locations.front().position;
    const Point g = scenario.locations.back().position;
    svg += fmt::format("<circle class=\"start\" cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"0.4\" fill=\"rgb(30,160,60)\"/>\n",
                       s.x, s.y);
    svg += fmt::format("<polygon class=\"goal\" points=\"{:.4f},{:.4f} {:.4f},{:.4f} {:.4f},{:.4f}\" "
                       "fill=\"rgb(240,150,0)\"/>\n",
                       g.x - 0.45, g.y - 0.35, g.x + 0.45, g.y - 0.35, g.x, g.y + 0.45);
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace medop::app
