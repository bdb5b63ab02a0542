#include "fairdiv/json_io.hpp"

#include "fairdiv/errors.hpp"

#include <fstream>

namespace fairdiv {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw InputError(std::string("missing field \"") + name + "\"");
    }
    return j.at(name);
}

int int_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer()) {
        throw InputError(std::string("field \"") + name + "\" must be an integer");
    }
    return v.get<int>();
}

std::string string_of(const json& j, const char* what) {
    if (!j.is_string()) {
        throw InputError(std::string(what) + " must be a string");
    }
    return j.get<std::string>();
}

bool is_minus_infinity(const json& j) {
    return j.is_string() && (j.get<std::string>() == "-inf" || j.get<std::string>() == "-infinity");
}

void throw_if(const std::vector<std::string>& problems) {
    if (!problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t k = 1; k < problems.size(); ++k) {
            msg += "; " + problems[k];
        }
        throw InputError(msg);
    }
}

}  // namespace

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) {
        return Rational(j.dump(), 10);
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

json rational_to_json(const Rational& r) { return format_rational(r); }

json value_to_json(const Value& v) {
    if (v.forbidden == 0) {
        return rational_to_json(v.amount);
    }
    return json{{"forbidden", v.forbidden}, {"amount", rational_to_json(v.amount)}};
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.agents = int_field(j, "agents");
    for (const json& id : field(j, "items")) {
        inst.items.push_back(string_of(id, "item id"));
    }
    const json& rows = field(j, "utilities");
    if (!rows.is_array()) {
        throw InputError("\"utilities\" must be an array of rows");
    }
    std::vector<std::pair<int, int>> forbidden_cells;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array()) {
            throw InputError("utility row " + std::to_string(i) + " is not an array");
        }
        std::vector<Rational> row;
        for (std::size_t k = 0; k < rows[i].size(); ++k) {
            if (is_minus_infinity(rows[i][k])) {
                forbidden_cells.emplace_back(static_cast<int>(i), static_cast<int>(k));
                row.emplace_back(0);
            } else {
                row.push_back(rational_from_json(rows[i][k]));
            }
        }
        inst.utilities.push_back(std::move(row));
    }
    if (j.contains("forbidden")) {
        for (const json& cell : j.at("forbidden")) {
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
                !cell[1].is_number_integer()) {
                throw InputError("forbidden entries must be [agent, item] index pairs");
            }
            forbidden_cells.emplace_back(cell[0].get<int>(), cell[1].get<int>());
        }
    }
    throw_if(validate_instance(inst));
    if (!forbidden_cells.empty()) {
        inst.forbidden.assign(inst.agents, std::vector<bool>(inst.items.size(), false));
        for (auto [i, k] : forbidden_cells) {
            if (i < 0 || i >= inst.agents || k < 0 || k >= inst.item_count()) {
                throw InputError("forbidden entry out of range");
            }
            inst.forbidden[i][k] = true;
        }
    }
    return inst;
}

json to_json(const Instance& inst) {
    json rows = json::array();
    json forbidden = json::array();
    for (int i = 0; i < inst.agents; ++i) {
        json row = json::array();
        for (int k = 0; k < inst.item_count(); ++k) {
            row.push_back(rational_to_json(inst.utilities[i][k]));
            if (inst.is_forbidden(i, k)) {
                forbidden.push_back({i, k});
            }
        }
        rows.push_back(std::move(row));
    }
    json j{{"agents", inst.agents}, {"items", inst.items}, {"utilities", std::move(rows)}};
    if (!forbidden.empty()) {
        j["forbidden"] = std::move(forbidden);
    }
    return j;
}

Multigraph multigraph_from_json(const json& j) {
    Multigraph g;
    g.vertices = int_field(j, "vertices");
    for (const json& e : field(j, "edges")) {
        Edge edge;
        edge.id = string_of(field(e, "id"), "edge id");
        edge.a = int_field(e, "a");
        edge.b = int_field(e, "b");
        edge.wa = rational_from_json(field(e, "wa"));
        edge.wb = e.contains("wb") ? rational_from_json(e.at("wb")) : edge.wa;
        g.edges.push_back(std::move(edge));
    }
    throw_if(validate_multigraph(g));
    return g;
}

json to_json(const Multigraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges) {
        edges.push_back({{"id", e.id},
                         {"a", e.a},
                         {"b", e.b},
                         {"wa", rational_to_json(e.wa)},
                         {"wb", rational_to_json(e.wb)}});
    }
    return json{{"vertices", g.vertices}, {"edges", std::move(edges)}};
}

Allocation allocation_from_json(const json& j) {
    Allocation a;
    for (const json& bundle : field(j, "bundles")) {
        std::vector<std::string> items;
        for (const json& id : bundle) {
            items.push_back(string_of(id, "item id"));
        }
        a.bundles.push_back(std::move(items));
    }
    a.partial = j.value("partial", false);
    return a;
}

json to_json(const Allocation& a) {
    json j{{"bundles", a.bundles}};
    if (a.partial) {
        j["partial"] = true;
    }
    return j;
}

Orientation orientation_from_json(const json& j) {
    Orientation o;
    const json& assign = field(j, "assign");
    if (!assign.is_object()) {
        throw InputError("\"assign\" must map edge ids to vertices");
    }
    for (const auto& [id, v] : assign.items()) {
        if (!v.is_number_integer()) {
            throw InputError("edge " + id + " must map to a vertex index");
        }
        o.assign[id] = v.get<int>();
    }
    o.partial = j.value("partial", false);
    return o;
}

json to_json(const Orientation& o) {
    json assign = json::object();
    for (const auto& [id, v] : o.assign) {
        assign[id] = v;
    }
    json j{{"assign", std::move(assign)}};
    if (o.partial) {
        j["partial"] = true;
    }
    return j;
}

json to_json(const FairnessReport& r) {
    json j{{"criterion", to_string(r.criterion)}, {"holds", r.holds}};
    if (r.extension) {
        j["extension"] = "strong-envy reading on a mixed instance";
    }
    if (r.partial) {
        j["partial"] = true;
    }
    if (r.witness) {
        const Witness& w = *r.witness;
        json wj = json::object();
        if (w.envier) wj["envier"] = *w.envier;
        if (w.envied) wj["envied"] = *w.envied;
        if (w.item) wj["item"] = *w.item;
        if (w.agent) wj["agent"] = *w.agent;
        if (w.threshold) wj["threshold"] = value_to_json(*w.threshold);
        if (w.received) wj["received"] = value_to_json(*w.received);
        if (w.dominating) wj["dominating"] = to_json(*w.dominating);
        j["witness"] = std::move(wj);
    }
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace fairdiv
