#include "fairdiv/model.hpp"

#include "fairdiv/errors.hpp"

#include <algorithm>
#include <set>

namespace fairdiv {

std::string format_value(const Value& v) {
    if (v.forbidden == 0) {
        return format_rational(v.amount);
    }
    return format_rational(v.amount) + " with " + std::to_string(v.forbidden) + " forbidden";
}

bool Instance::has_forbidden() const {
    for (const auto& row : forbidden) {
        if (std::find(row.begin(), row.end(), true) != row.end()) {
            return true;
        }
    }
    return false;
}

Instance make_instance(std::vector<std::vector<Rational>> utilities) {
    Instance inst;
    inst.agents = static_cast<int>(utilities.size());
    std::size_t m = utilities.empty() ? 0 : utilities.front().size();
    for (std::size_t j = 0; j < m; ++j) {
        inst.items.push_back("o" + std::to_string(j + 1));
    }
    inst.utilities = std::move(utilities);
    return inst;
}

Instance make_instance(const std::vector<std::vector<long>>& utilities) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(utilities.size());
    for (const auto& row : utilities) {
        std::vector<Rational> r;
        r.reserve(row.size());
        for (long x : row) {
            r.emplace_back(x);
        }
        rows.push_back(std::move(r));
    }
    return make_instance(std::move(rows));
}

bool Multigraph::is_symmetric() const {
    return std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.wa == e.wb; });
}

std::optional<int> Multigraph::edge_index(const std::string& id) const {
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].id == id) {
            return static_cast<int>(k);
        }
    }
    return std::nullopt;
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    if (inst.agents < 1) {
        out.push_back("agent count must be at least 1");
    }
    if (static_cast<int>(inst.utilities.size()) != inst.agents) {
        out.push_back("row count mismatch");
    }
    for (const auto& row : inst.utilities) {
        if (row.size() != inst.items.size()) {
            out.push_back("row length mismatch");
            break;
        }
    }
    std::set<std::string> seen;
    for (const auto& id : inst.items) {
        if (!seen.insert(id).second) {
            out.push_back("duplicate item id " + id);
        }
    }
    if (!inst.forbidden.empty()) {
        bool ok = static_cast<int>(inst.forbidden.size()) == inst.agents;
        for (const auto& row : inst.forbidden) {
            ok = ok && row.size() == inst.items.size();
        }
        if (!ok) {
            out.push_back("forbidden mask shape mismatch");
        }
    }
    return out;
}

std::vector<std::string> validate_multigraph(const Multigraph& g) {
    std::vector<std::string> out;
    if (g.vertices < 0) {
        out.push_back("negative vertex count");
    }
    std::set<std::string> seen;
    for (const auto& e : g.edges) {
        if (e.a < 0 || e.a >= g.vertices || e.b < 0 || e.b >= g.vertices) {
            out.push_back("edge " + e.id + " has an endpoint out of range");
        }
        if (!seen.insert(e.id).second) {
            out.push_back("duplicate edge id " + e.id);
        }
    }
    return out;
}

std::unordered_map<std::string, int> index_items(const Instance& inst) {
    std::unordered_map<std::string, int> idx;
    idx.reserve(inst.items.size());
    for (std::size_t j = 0; j < inst.items.size(); ++j) {
        idx.emplace(inst.items[j], static_cast<int>(j));
    }
    return idx;
}

std::vector<std::string> validate_allocation(const Instance& inst, const Allocation& alloc) {
    std::vector<std::string> out;
    if (static_cast<int>(alloc.bundles.size()) != inst.agents) {
        out.push_back("allocation has " + std::to_string(alloc.bundles.size()) + " bundles for " +
                      std::to_string(inst.agents) + " agents");
    }
    auto idx = index_items(inst);
    std::vector<bool> used(inst.items.size(), false);
    for (const auto& bundle : alloc.bundles) {
        for (const auto& id : bundle) {
            auto it = idx.find(id);
            if (it == idx.end()) {
                out.push_back("unknown item id " + id);
                continue;
            }
            if (used[it->second]) {
                out.push_back("item " + id + " allocated twice");
            }
            used[it->second] = true;
        }
    }
    if (!alloc.partial) {
        for (std::size_t j = 0; j < used.size(); ++j) {
            if (!used[j]) {
                out.push_back("item " + inst.items[j] + " is unallocated");
            }
        }
    }
    return out;
}

std::vector<std::string> validate_orientation(const Multigraph& g, const Orientation& pi) {
    std::vector<std::string> out;
    std::set<std::string> assigned;
    for (const auto& [id, v] : pi.assign) {
        auto k = g.edge_index(id);
        if (!k) {
            out.push_back("unknown edge id " + id);
            continue;
        }
        const Edge& e = g.edges[*k];
        if (v != e.a && v != e.b) {
            out.push_back("edge " + id + " assigned to non-endpoint " + std::to_string(v));
        }
        assigned.insert(id);
    }
    if (!pi.partial) {
        for (const auto& e : g.edges) {
            if (!assigned.count(e.id)) {
                out.push_back("edge " + e.id + " is unoriented");
            }
        }
    }
    return out;
}

namespace {

void throw_if(const std::vector<std::string>& problems) {
    if (problems.empty()) {
        return;
    }
    std::string msg = problems.front();
    for (std::size_t k = 1; k < problems.size(); ++k) {
        msg += "; " + problems[k];
    }
    throw InputError(msg);
}

}  // namespace

Owners owners_of(const Instance& inst, const Allocation& alloc) {
    throw_if(validate_allocation(inst, alloc));
    auto idx = index_items(inst);
    Owners owners(inst.items.size(), -1);
    for (std::size_t i = 0; i < alloc.bundles.size(); ++i) {
        for (const auto& id : alloc.bundles[i]) {
            owners[idx.at(id)] = static_cast<int>(i);
        }
    }
    return owners;
}

Allocation allocation_from_owners(const Instance& inst, const Owners& owners) {
    Allocation alloc;
    alloc.bundles.resize(inst.agents);
    for (std::size_t j = 0; j < owners.size(); ++j) {
        if (owners[j] < 0) {
            alloc.partial = true;
            continue;
        }
        alloc.bundles[owners[j]].push_back(inst.items[j]);
    }
    return alloc;
}

Value bundle_value(const Instance& inst, int agent, const std::vector<std::string>& bundle) {
    if (agent < 0 || agent >= inst.agents) {
        throw InputError("unknown agent " + std::to_string(agent));
    }
    auto idx = index_items(inst);
    Value total;
    for (const auto& id : bundle) {
        auto it = idx.find(id);
        if (it == idx.end()) {
            throw InputError("unknown item id " + id);
        }
        total += inst.value(agent, it->second);
    }
    return total;
}

Rational bundle_utility(const Instance& inst, int agent, const std::vector<std::string>& bundle) {
    Value v = bundle_value(inst, agent, bundle);
    if (v.forbidden != 0) {
        throw InputError("bundle contains an item forbidden to agent " + std::to_string(agent));
    }
    return v.amount;
}

Instance graphical_to_instance(const Multigraph& g) {
    Instance inst;
    inst.agents = g.vertices;
    inst.utilities.assign(g.vertices, std::vector<Rational>(g.edges.size(), Rational(0)));
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        inst.items.push_back(e.id);
        if (e.is_loop()) {
            inst.utilities[e.a][k] = e.wa;
        } else {
            inst.utilities[e.a][k] = e.wa;
            inst.utilities[e.b][k] = e.wb;
        }
    }
    return inst;
}

Receivers receivers_of(const Multigraph& g, const Orientation& pi) {
    throw_if(validate_orientation(g, pi));
    Receivers recv(g.edges.size(), -1);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        auto it = pi.assign.find(g.edges[k].id);
        if (it != pi.assign.end()) {
            recv[k] = it->second;
        }
    }
    return recv;
}

Orientation orientation_from_receivers(const Multigraph& g, const Receivers& recv) {
    Orientation pi;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (recv[k] < 0) {
            pi.partial = true;
            continue;
        }
        pi.assign[g.edges[k].id] = recv[k];
    }
    return pi;
}

Allocation orientation_to_allocation(const Multigraph& g, const Orientation& pi) {
    Receivers recv = receivers_of(g, pi);
    Allocation alloc;
    alloc.bundles.resize(g.vertices);
    alloc.partial = pi.partial;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (recv[k] >= 0) {
            alloc.bundles[recv[k]].push_back(g.edges[k].id);
        }
    }
    return alloc;
}

AgentFlags agent_flags(const Instance& inst, int agent) {
    AgentFlags f{true, true};
    for (int j = 0; j < inst.item_count(); ++j) {
        if (inst.is_forbidden(agent, j) || inst.utilities[agent][j] < 0) {
            f.goods = false;
        }
        if (!inst.is_forbidden(agent, j) && inst.utilities[agent][j] > 0) {
            f.chores = false;
        }
    }
    return f;
}

AgentClass agent_class(const Instance& inst, int agent) {
    AgentFlags f = agent_flags(inst, agent);
    if (f.goods) {
        return AgentClass::goods;
    }
    if (f.chores) {
        return AgentClass::chores;
    }
    return AgentClass::mixed;
}

std::string to_string(AgentClass c) {
    switch (c) {
        case AgentClass::goods:
            return "goods-agent";
        case AgentClass::chores:
            return "chores-agent";
        case AgentClass::mixed:
            return "mixed-agent";
    }
    return "mixed-agent";
}

InstanceKind instance_kind(const Instance& inst) {
    bool goods = true;
    bool chores = true;
    for (int i = 0; i < inst.agents; ++i) {
        AgentFlags f = agent_flags(inst, i);
        goods = goods && f.goods;
        chores = chores && f.chores;
    }
    if (goods) {
        return InstanceKind::goods;
    }
    if (chores) {
        return InstanceKind::chores;
    }
    return InstanceKind::mixed;
}

}  // namespace fairdiv
