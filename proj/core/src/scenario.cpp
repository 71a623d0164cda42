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

#include "medop/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "medop/random.hpp"

namespace medop {

using nlohmann::json;

namespace {

std::string at_index(std::string_view base, std::size_t i) {
    return std::string(base) + "[" + std::to_string(i) + "]";
}

std::string join(std::string_view base, std::string_view key) {
    return base.empty() ? std::string(key) : std::string(base) + "." + std::string(key);
}

const json& require(const json& obj, std::string_view base, const char* key) {
    if (!obj.is_object()) throw ParseError(std::string(base), "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(join(base, key), "missing required key");
    return *it;
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ParseError(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(field, "expected a finite number");
    return d;
}

int as_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ParseError(field, "expected an integer");
    return v.get<int>();
}

bool as_bool(const json& v, const std::string& field) {
    if (!v.is_boolean()) throw ParseError(field, "expected true or false");
    return v.get<bool>();
}

const json& as_array(const json& v, const std::string& field) {
    if (!v.is_array()) throw ParseError(field, "expected an array");
    return v;
}

double round_reward(double sum) noexcept { return std::round(sum * 1e9) / 1e9; }

}  // namespace

std::size_t Scenario::index_of(int id) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i].id == id) return i;
    }
    throw std::invalid_argument("unknown location id " + std::to_string(id));
}

void validate(const Scenario& s) {
    if (s.locations.size() < 2) throw ValidationError("locations", "need at least a start and a goal");
    if (!(s.t_max > 0.0) || !std::isfinite(s.t_max)) throw ValidationError("t_max", "must be positive");
    if (!(s.rho_min > 0.0)) throw ValidationError("rho_min", "must be positive");
    if (!std::isfinite(s.rho_max)) throw ValidationError("rho_max", "must be finite");
    if (s.rho_min > s.rho_max) {
        std::ostringstream msg;
        msg << "rho_min (" << s.rho_min << ") exceeds rho_max (" << s.rho_max << ")";
        throw ValidationError("rho_min,rho_max", msg.str());
    }
    std::set<int> ids;
    for (std::size_t i = 0; i < s.locations.size(); ++i) {
        const auto& loc = s.locations[i];
        const auto field = at_index("locations", i);
        if (!ids.insert(loc.id).second) throw ValidationError(field + ".id", "duplicate id " + std::to_string(loc.id));
        if (!std::isfinite(loc.position.x) || !std::isfinite(loc.position.y)) {
            throw ValidationError(field, "coordinates must be finite");
        }
        if (!(loc.reward >= 0.0) || !std::isfinite(loc.reward)) {
            throw ValidationError(field + ".reward", "must be a non-negative number");
        }
    }
    if (s.locations.front().reward != 0.0) throw ValidationError("locations[start].reward", "start reward must be 0");
    if (s.locations.back().reward != 0.0) throw ValidationError("locations[goal].reward", "goal reward must be 0");
    if (s.closed && s.locations.front().position != s.locations.back().position) {
        throw ValidationError("closed", "closed scenario needs start and goal at the same position");
    }
    if (!s.fixed_headings.empty()) {
        if (s.fixed_headings.size() != s.locations.size()) {
            throw ValidationError("fixed_headings", "needs one entry per location");
        }
        for (std::size_t i = 0; i < s.fixed_headings.size(); ++i) {
            const auto& h = s.fixed_headings[i];
            if (h && (!(*h >= 0.0) || !(*h < kTwoPi))) {
                throw ValidationError(at_index("locations", i) + ".heading", "must lie in [0, 2pi)");
            }
        }
    }
    if (!(s.field.alpha() > 0.0)) throw ValidationError("sensing.alpha", "must be positive");
    if (!(s.field.mu() > 0.0)) throw ValidationError("sensing.mu", "must be positive");
    if (!(s.field.cap() > 0.0)) throw ValidationError("sensing.cap", "must be positive");
}

Scenario load_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("malformed scenario document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("", "scenario document must be an object");

    Scenario s;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("name", "expected a string");
        s.name = it->get<std::string>();
    }
    s.t_max = as_number(require(doc, "", "t_max"), "t_max");
    s.rho_min = as_number(require(doc, "", "rho_min"), "rho_min");
    s.rho_max = as_number(require(doc, "", "rho_max"), "rho_max");
    if (auto it = doc.find("closed"); it != doc.end()) s.closed = as_bool(*it, "closed");

    const json& sensing = require(doc, "", "sensing");
    const double alpha = as_number(require(sensing, "sensing", "alpha"), "sensing.alpha");
    const double mu = as_number(require(sensing, "sensing", "mu"), "sensing.mu");
    const double cap = as_number(require(sensing, "sensing", "cap"), "sensing.cap");
    if (!(alpha > 0.0)) throw ValidationError("sensing.alpha", "must be positive");
    if (!(mu > 0.0)) throw ValidationError("sensing.mu", "must be positive");
    if (!(cap > 0.0)) throw ValidationError("sensing.cap", "must be positive");

    std::vector<Point> nodes;
    const json& sensors = as_array(require(doc, "", "sensors"), "sensors");
    for (std::size_t i = 0; i < sensors.size(); ++i) {
        const auto field = at_index("sensors", i);
        const json& xy = as_array(sensors[i], field);
        if (xy.size() != 2) throw ParseError(field, "expected [x, y]");
        nodes.push_back({as_number(xy[0], field + "[0]"), as_number(xy[1], field + "[1]")});
    }
    s.field = SensorField(std::move(nodes), alpha, mu, cap);

    struct Row {
        TargetLocation loc;
        std::optional<double> heading;
    };
    std::vector<Row> rows;
    const json& locs = as_array(require(doc, "", "locations"), "locations");
    for (std::size_t i = 0; i < locs.size(); ++i) {
        const auto field = at_index("locations", i);
        const json& l = locs[i];
        Row row;
        row.loc.id = as_int(require(l, field, "id"), field + ".id");
        row.loc.position.x = as_number(require(l, field, "x"), field + ".x");
        row.loc.position.y = as_number(require(l, field, "y"), field + ".y");
        row.loc.reward = as_number(require(l, field, "reward"), field + ".reward");
        if (auto it = l.find("heading"); it != l.end()) {
            const double h = as_number(*it, field + ".heading");
            if (!(h >= 0.0 && h < kTwoPi)) throw ValidationError(field + ".heading", "must lie in [0, 2pi)");
            row.heading = h;
        }
        rows.push_back(row);
    }

    const int start_id = as_int(require(doc, "", "start_id"), "start_id");
    const int goal_id = as_int(require(doc, "", "goal_id"), "goal_id");
    if (start_id == goal_id) throw ValidationError("start_id,goal_id", "start and goal must be distinct locations");
    auto find_row = [&](int id, const char* field) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.loc.id == id; });
        if (it == rows.end()) throw ValidationError(field, "no location with id " + std::to_string(id));
        return it;
    };
    const Row start = *find_row(start_id, "start_id");
    const Row goal = *find_row(goal_id, "goal_id");

    std::vector<Row> ordered;
    ordered.push_back(start);
    for (const auto& r : rows) {
        if (r.loc.id != start_id && r.loc.id != goal_id) ordered.push_back(r);
    }
    ordered.push_back(goal);

    const bool any_heading = std::any_of(ordered.begin(), ordered.end(), [](const Row& r) { return r.heading.has_value(); });
    for (const auto& r : ordered) {
        s.locations.push_back(r.loc);
        if (any_heading) s.fixed_headings.push_back(r.heading);
    }
    validate(s);
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("", "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string save_scenario(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["t_max"] = s.t_max;
    doc["rho_min"] = s.rho_min;
    doc["rho_max"] = s.rho_max;
    doc["closed"] = s.closed;
    doc["sensing"] = {{"alpha", s.field.alpha()}, {"mu", s.field.mu()}, {"cap", s.field.cap()}};
    json sensors = json::array();
    for (const auto& n : s.field.nodes()) sensors.push_back({n.x, n.y});
    doc["sensors"] = std::move(sensors);
    json locs = json::array();
    for (std::size_t i = 0; i < s.locations.size(); ++i) {
        const auto& l = s.locations[i];
        json row = {{"id", l.id}, {"x", l.position.x}, {"y", l.position.y}, {"reward", l.reward}};
        if (auto h = s.fixed_heading(i)) row["heading"] = *h;
        locs.push_back(std::move(row));
    }
    doc["locations"] = std::move(locs);
    doc["start_id"] = s.locations.front().id;
    doc["goal_id"] = s.locations.back().id;
    return doc.dump(2) + "\n";
}

Scenario parse_orienteering_benchmark(std::string_view text, std::string name, double t_max, double radius) {
    std::istringstream in{std::string(text)};
    double header_tmax = 0.0;
    double paths = 0.0;
    if (!(in >> header_tmax >> paths)) throw ParseError("header", "expected '<tmax> <paths>'");
    std::vector<TargetLocation> rows;
    double x = 0.0, y = 0.0, score = 0.0;
    int id = 0;
    while (in >> x >> y >> score) rows.push_back({id++, {x, y}, score});
    if (!in.eof()) throw ParseError(at_index("rows", rows.size()), "expected 'x y score'");
    if (rows.size() < 2) throw ValidationError("rows", "need at least a start and a goal row");

    Scenario s;
    s.name = std::move(name);
    s.t_max = t_max;
    s.rho_min = radius;
    s.rho_max = radius;
    s.field = SensorField({}, 50.0, 2.0, 30.0);
    s.locations.push_back(rows[0]);
    for (std::size_t i = 2; i < rows.size(); ++i) s.locations.push_back(rows[i]);
    s.locations.push_back(rows[1]);
    s.locations.front().reward = 0.0;
    s.locations.back().reward = 0.0;
    validate(s);
    return s;
}

std::optional<InstanceKind> parse_instance_kind(std::string_view name) noexcept {
    if (name == "cross") return InstanceKind::Cross;
    if (name == "grid") return InstanceKind::Grid;
    return std::nullopt;
}

std::string_view to_string(InstanceKind kind) noexcept {
    return kind == InstanceKind::Cross ? "cross" : "grid";
}

Scenario generate_instance(InstanceKind kind, std::uint64_t seed, bool closed) {
    struct Layout {
        double width, height;
        std::size_t cols, rows;
        Point start, goal;
        std::vector<Point> nodes;
    };
    Layout layout;
    if (kind == InstanceKind::Cross) {
        layout = {30.0, 22.0, 6, 3, {1.0, 1.0}, {29.0, 21.0}, {}};
        constexpr double spacing = 3.5;
        const Point centre{15.0, 11.0};
        for (int k = -3; k <= 3; ++k) layout.nodes.push_back({centre.x + k * spacing, centre.y});
        for (int k : {-2, -1, 1, 2}) layout.nodes.push_back({centre.x, centre.y + k * spacing});
    } else {
        layout = {30.0, 30.0, 5, 3, {0.0, 15.0}, {30.0, 15.0}, {}};
        for (double y : {10.0, 20.0}) {
            for (double x : {6.0, 12.0, 18.0, 24.0}) layout.nodes.push_back({x, y});
        }
    }
    if (closed) layout.goal = layout.start;

    Rng rng(seed);
    constexpr double rewards[] = {0.2, 0.4, 0.6, 0.8, 1.0};
    constexpr double node_clearance = 1.5;
    constexpr double endpoint_clearance = 2.0;
    const double cw = layout.width / static_cast<double>(layout.cols);
    const double ch = layout.height / static_cast<double>(layout.rows);

    Scenario s;
    s.name = std::string(to_string(kind)) + (closed ? "-closed-" : "-") + std::to_string(seed);
    s.closed = closed;
    s.t_max = 100.0;
    s.rho_min = 1.0;
    s.rho_max = 2.0;
    s.field = SensorField(layout.nodes, 50.0, 2.0, 30.0);

    int next_id = 0;
    s.locations.push_back({next_id++, layout.start, 0.0});
    for (std::size_t r = 0; r < layout.rows; ++r) {
        for (std::size_t c = 0; c < layout.cols; ++c) {
            const Point centre{(static_cast<double>(c) + 0.5) * cw, (static_cast<double>(r) + 0.5) * ch};
            Point p = centre;
            for (int attempt = 0; attempt < 100; ++attempt) {
                const Point cand{centre.x + uniform(rng, -0.35, 0.35) * cw, centre.y + uniform(rng, -0.35, 0.35) * ch};
                const bool clear =
                    std::all_of(layout.nodes.begin(), layout.nodes.end(),
                                [&](const Point& n) { return distance(n, cand) >= node_clearance; }) &&
                    distance(cand, layout.start) >= endpoint_clearance &&
                    distance(cand, layout.goal) >= endpoint_clearance;
                if (clear) {
                    p = cand;
                    break;
                }
            }
            const double reward = rewards[uniform_index(rng, std::size(rewards))];
            s.locations.push_back({next_id++, p, reward});
        }
    }
    s.locations.push_back({next_id++, layout.goal, 0.0});
    validate(s);
    return s;
}

double total_reward(const Scenario& scenario, std::span<const int> ids) {
    double sum = 0.0;
    for (int id : ids) sum += scenario.locations[scenario.index_of(id)].reward;
    return round_reward(sum);
}

double reward_of_indices(const Scenario& scenario, std::span<const std::size_t> indices) {
    double sum = 0.0;
    for (std::size_t i : indices) sum += scenario.locations.at(i).reward;
    return round_reward(sum);
}

std::string_view to_string(SelectionMethod method) noexcept {
    return method == SelectionMethod::ReferencePoint ? "reference-point" : "crowding-distance";
}

std::optional<SelectionMethod> parse_selection_method(std::string_view name) noexcept {
    if (name == "reference-point") return SelectionMethod::ReferencePoint;
    if (name == "crowding-distance") return SelectionMethod::CrowdingDistance;
    return std::nullopt;
}

void validate(const SolverParams& p) {
    auto prob = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    };
    if (p.population_size == 0) throw std::invalid_argument("population_size must be positive");
    prob(p.crossover_prob, "crossover_prob");
    prob(p.mutation_prob_individual, "mutation_prob_individual");
    prob(p.mutation_prob_gene, "mutation_prob_gene");
    if (!(p.von_mises_kappa > 0.0)) throw std::invalid_argument("von_mises_kappa must be positive");
    if (!(p.exposure_step > 0.0)) throw std::invalid_argument("exposure_step must be positive");
}

}  // namespace medop
