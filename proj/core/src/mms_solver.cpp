#include "fairdiv/mms_solver.hpp"

#include "fairdiv/errors.hpp"
#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace fairdiv {

std::string to_string(MmsVerdict v) {
    switch (v) {
        case MmsVerdict::found:
            return "found";
        case MmsVerdict::none:
            return "none";
        case MmsVerdict::unknown:
            return "unknown";
    }
    return "?";
}

namespace {

using Bundles = std::vector<std::vector<int>>;
using Shape = std::function<bool(const std::vector<int>& sizes)>;

std::vector<Value> thresholds_of(const Instance& inst) {
    std::vector<Value> t;
    for (int i = 0; i < inst.agents; ++i) {
        t.push_back(mms_threshold(inst, i).threshold);
    }
    return t;
}

Value value_of(const Instance& inst, int agent, const std::vector<int>& items) {
    Value v;
    for (int j : items) {
        v += inst.value(agent, j);
    }
    return v;
}

Bundles bundles_of(const Owners& owners, int n) {
    Bundles b(n);
    for (std::size_t j = 0; j < owners.size(); ++j) {
        b[owners[j]].push_back(static_cast<int>(j));
    }
    return b;
}

Owners owners_from_bundles(const Bundles& bundles, int m) {
    Owners owners(m, -1);
    for (std::size_t b = 0; b < bundles.size(); ++b) {
        for (int j : bundles[b]) {
            owners[j] = static_cast<int>(b);
        }
    }
    return owners;
}

// Depth-first over canonical partitions (a new bundle is opened only as the next unused
// one), pruned by how much positive value is still unplaced.
class ShapedPartition {
public:
    ShapedPartition(const Instance& inst, int agent, Value threshold, Shape shape)
        : n_(inst.agents), m_(inst.item_count()), t_(std::move(threshold)), shape_(std::move(shape)) {
        for (int j = 0; j < m_; ++j) {
            vals_.push_back(inst.value(agent, j));
        }
        rest_.assign(m_ + 1, Value());
        for (int j = m_ - 1; j >= 0; --j) {
            rest_[j] = rest_[j + 1];
            if (Value() < vals_[j]) {
                rest_[j] += vals_[j];
            }
        }
        cur_.assign(n_, Value());
        sizes_.assign(n_, 0);
        assign_.assign(m_, -1);
    }

    std::optional<Owners> run() {
        if (dfs(0, 0)) {
            return assign_;
        }
        return std::nullopt;
    }

private:
    bool dfs(int j, int used) {
        Value deficit;
        for (int b = 0; b < n_; ++b) {
            if (cur_[b] + rest_[j] < t_) {
                return false;
            }
            if (cur_[b] < t_) {
                deficit += t_ - cur_[b];
            }
        }
        if (rest_[j] < deficit) {
            return false;
        }
        if (j == m_) {
            return shape_(sizes_);
        }
        const int limit = std::min(used + 1, n_);
        for (int b = 0; b < limit; ++b) {
            assign_[j] = b;
            cur_[b] += vals_[j];
            ++sizes_[b];
            if (dfs(j + 1, std::max(used, b + 1))) {
                return true;
            }
            cur_[b] -= vals_[j];
            --sizes_[b];
        }
        assign_[j] = -1;
        return false;
    }

    int n_;
    int m_;
    Value t_;
    Shape shape_;
    std::vector<Value> vals_;
    std::vector<Value> rest_;
    std::vector<Value> cur_;
    std::vector<int> sizes_;
    Owners assign_;
};

std::optional<Owners> partition_with_shape(const Instance& inst, int agent, const Value& threshold,
                                           const Shape& shape) {
    return ShapedPartition(inst, agent, threshold, shape).run();
}

bool has_small_bundle(const std::vector<int>& sizes) {
    return std::any_of(sizes.begin(), sizes.end(), [](int s) { return s <= 1; });
}

bool has_singleton(const std::vector<int>& sizes) {
    return std::any_of(sizes.begin(), sizes.end(), [](int s) { return s == 1; });
}

bool mostly_small(const std::vector<int>& sizes) {
    auto small = std::count_if(sizes.begin(), sizes.end(), [](int s) { return s == 1 || s == 2; });
    return small + 1 >= static_cast<long>(sizes.size());
}

bool any_shape(const std::vector<int>&) { return true; }

std::vector<std::string> unique_dummy_ids(const Instance& inst, int count) {
    std::set<std::string> taken(inst.items.begin(), inst.items.end());
    std::vector<std::string> ids;
    for (int k = 1; static_cast<int>(ids.size()) < count; ++k) {
        std::string id = "dummy" + std::to_string(k);
        if (!taken.count(id)) {
            ids.push_back(id);
        }
    }
    return ids;
}

// Appends zero-valued items until the instance has `target` items.
Instance padded(const Instance& inst, int target, std::set<std::string>& dummies) {
    Instance out = inst;
    const int extra = target - inst.item_count();
    if (extra <= 0) {
        return out;
    }
    for (const std::string& id : unique_dummy_ids(inst, extra)) {
        out.items.push_back(id);
        dummies.insert(id);
        for (auto& row : out.utilities) {
            row.emplace_back(0);
        }
        for (auto& row : out.forbidden) {
            row.push_back(false);
        }
    }
    return out;
}

Allocation without(const Allocation& alloc, const std::set<std::string>& dummies) {
    Allocation out;
    for (const auto& bundle : alloc.bundles) {
        std::vector<std::string> kept;
        for (const auto& id : bundle) {
            if (!dummies.count(id)) {
                kept.push_back(id);
            }
        }
        out.bundles.push_back(std::move(kept));
    }
    return out;
}

bool meets(const Instance& inst, const Allocation& alloc, const std::vector<Value>& thresholds) {
    for (int i = 0; i < inst.agents; ++i) {
        if (bundle_value(inst, i, alloc.bundles[i]) < thresholds[i]) {
            return false;
        }
    }
    return true;
}

std::optional<Allocation> exhaustive(const Instance& inst, const std::vector<Value>& thresholds,
                                     const SearchBudget& budget, SearchStatus* status = nullptr) {
    OwnersPredicate pred = [&](const Owners& owners) {
        std::vector<Value> got(inst.agents);
        for (std::size_t j = 0; j < owners.size(); ++j) {
            got[owners[j]] += inst.value(owners[j], static_cast<int>(j));
        }
        for (int i = 0; i < inst.agents; ++i) {
            if (got[i] < thresholds[i]) {
                return false;
            }
        }
        return true;
    };
    auto r = brute_exists_allocation(inst, pred, budget);
    if (status) {
        *status = r.status;
    }
    return r.witness;
}

Allocation divide_and_choose(const Instance& inst) {
    MmsThreshold cut = mms_threshold(inst, 0);
    Allocation out = cut.partition;
    if (bundle_value(inst, 1, out.bundles[0]) < bundle_value(inst, 1, out.bundles[1])) {
        return out;
    }
    std::swap(out.bundles[0], out.bundles[1]);
    return out;
}

Allocation everything_to(const Instance& inst, int agent) {
    Allocation a;
    a.bundles.assign(inst.agents, {});
    a.bundles[agent] = inst.items;
    return a;
}

// Tries every way of handing three bundles to three agents.
std::optional<Owners> assign_three(const Instance& inst, const std::vector<Value>& t, const Owners& labels) {
    std::vector<int> perm{0, 1, 2};
    Bundles bundles = bundles_of(labels, 3);
    do {
        bool ok = true;
        for (int b = 0; b < 3 && ok; ++b) {
            ok = !(value_of(inst, perm[b], bundles[b]) < t[perm[b]]);
        }
        if (ok) {
            Owners owners(labels.size());
            for (std::size_t j = 0; j < labels.size(); ++j) {
                owners[j] = perm[labels[j]];
            }
            return owners;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

Owners three_way(int m, const std::vector<int>& first, const std::vector<int>& second) {
    Owners labels(m, 2);
    for (int j : first) labels[j] = 0;
    for (int j : second) labels[j] = 1;
    return labels;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) {
            return false;
        }
    }
    return true;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) {
            out.push_back(x);
        }
    }
    return out;
}

// Candidates from disjoint bundle pairs: (pi^i_x, pi^j_y, rest), and the partitions
// themselves handed out with a picking order.
void disjointness_candidates(int m, const std::vector<Bundles>& parts, std::vector<Owners>& out) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                continue;
            }
            int edges = 0;
            for (const auto& x : parts[i]) {
                for (const auto& y : parts[j]) {
                    if (disjoint(x, y)) {
                        ++edges;
                        out.push_back(three_way(m, x, y));
                    }
                }
            }
            if (edges >= 1) {
                out.push_back(owners_from_bundles(parts[j], m));
                out.push_back(owners_from_bundles(parts[i], m));
            }
        }
    }
}

// Three agents, nine items, every partition made of three 3-bundles; rows sorted so a
// smaller index is never worth less to anyone.
void triple_candidates(int m, const std::vector<Bundles>& parts, std::vector<Owners>& out) {
    // Identical bundles across two partitions.
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            for (const auto& a : parts[i]) {
                for (const auto& b : parts[j]) {
                    std::vector<int> sa = a, sb = b;
                    std::sort(sa.begin(), sa.end());
                    std::sort(sb.begin(), sb.end());
                    if (sa == sb) {
                        out.push_back(owners_from_bundles(parts[j], m));
                        out.push_back(owners_from_bundles(parts[i], m));
                    }
                }
            }
        }
    }
    // Two bundles differing in exactly one item.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                continue;
            }
            for (const auto& low : parts[i]) {
                for (const auto& high : parts[j]) {
                    if (intersect(low, high).size() != 2) {
                        continue;
                    }
                    int x = -1, y = -1;
                    for (int v : low) {
                        if (std::find(high.begin(), high.end(), v) == high.end()) x = v;
                    }
                    for (int v : high) {
                        if (std::find(low.begin(), low.end(), v) == low.end()) y = v;
                    }
                    if (y > x) {
                        continue;  // the symmetric orientation of this pair handles it
                    }
                    out.push_back(owners_from_bundles(parts[i], m));
                    Bundles rest;
                    for (const auto& b : parts[j]) {
                        if (&b == &high) {
                            continue;
                        }
                        std::vector<int> c = b;
                        auto it = std::find(c.begin(), c.end(), x);
                        if (it != c.end()) {
                            *it = y;
                        }
                        rest.push_back(std::move(c));
                    }
                    if (rest.size() == 2) {
                        out.push_back(three_way(m, low, rest[0]));
                    }
                }
            }
        }
    }
    // Pairwise single-item intersections: swap the least valuable item out.
    const int last = m - 1;
    std::vector<std::vector<int>> with_last;
    for (int i = 0; i < 3; ++i) {
        for (const auto& b : parts[i]) {
            if (std::find(b.begin(), b.end(), last) != b.end()) {
                with_last.push_back(b);
            }
        }
    }
    if (with_last.size() != 3) {
        return;
    }
    std::vector<bool> covered(m, false);
    for (const auto& b : with_last) {
        for (int v : b) covered[v] = true;
    }
    std::vector<int> spare;
    for (int v = 0; v < m; ++v) {
        if (!covered[v]) spare.push_back(v);
    }
    if (spare.size() != 2) {
        return;
    }
    std::vector<int> roles{0, 1, 2};
    do {
        for (int flip = 0; flip < 2; ++flip) {
            auto swap_in = [&](std::vector<int> b, int v) {
                *std::find(b.begin(), b.end(), last) = v;
                return b;
            };
            std::vector<int> second = swap_in(with_last[roles[1]], spare[flip]);
            std::vector<int> third = swap_in(with_last[roles[0]], spare[1 - flip]);
            Owners labels(m, -1);
            for (int v : with_last[roles[2]]) labels[v] = 0;
            for (int v : second) labels[v] = 1;
            for (int v : third) labels[v] = 2;
            if (std::find(labels.begin(), labels.end(), -1) == labels.end()) {
                out.push_back(labels);
            }
        }
    } while (std::next_permutation(roles.begin(), roles.end()));
}

std::vector<Bundles> preferred_partitions(const Instance& inst, const std::vector<Value>& t,
                                          const std::vector<Shape>& preference) {
    std::vector<Bundles> parts;
    for (int i = 0; i < 3; ++i) {
        std::optional<Owners> found;
        for (const Shape& s : preference) {
            if ((found = partition_with_shape(inst, i, t[i], s))) {
                break;
            }
        }
        parts.push_back(bundles_of(*found, 3));
    }
    return parts;
}

std::optional<Allocation> first_working(const Instance& inst, const std::vector<Value>& t,
                                        const std::vector<Owners>& candidates) {
    for (const Owners& labels : candidates) {
        if (auto owners = assign_three(inst, t, labels)) {
            return allocation_from_owners(inst, *owners);
        }
    }
    return std::nullopt;
}

int max_bipartite_matching(const std::vector<std::vector<int>>& adj, int right, std::vector<int>& match_left) {
    std::vector<int> match_right(right, -1);
    match_left.assign(adj.size(), -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int u, std::vector<bool>& seen) {
        for (int v : adj[u]) {
            if (seen[v]) {
                continue;
            }
            seen[v] = true;
            if (match_right[v] < 0 || augment(match_right[v], seen)) {
                match_right[v] = u;
                match_left[u] = v;
                return true;
            }
        }
        return false;
    };
    int size = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        std::vector<bool> seen(right, false);
        if (augment(static_cast<int>(u), seen)) {
            ++size;
        }
    }
    return size;
}

std::optional<ReductionStep> matching_step(const Instance& inst, const std::vector<Value>& t,
                                           const Bundles& bundles) {
    const int n = inst.agents;
    const int nb = static_cast<int>(bundles.size());
    // satisfied[b]: agents happy with bundle b.
    std::vector<std::vector<int>> satisfied(nb);
    std::vector<std::vector<int>> by_agent(n);
    for (int b = 0; b < nb; ++b) {
        for (int j = 0; j < n; ++j) {
            if (!(value_of(inst, j, bundles[b]) < t[j])) {
                satisfied[b].push_back(j);
                by_agent[j].push_back(b);
            }
        }
    }
    auto make_step = [&](const std::vector<int>& agents, const std::vector<int>& chosen_bundles,
                         const char* rule) -> std::optional<ReductionStep> {
        std::vector<std::vector<int>> adj;
        for (int j : agents) {
            std::vector<int> row;
            for (std::size_t k = 0; k < chosen_bundles.size(); ++k) {
                const auto& s = satisfied[chosen_bundles[k]];
                if (std::find(s.begin(), s.end(), j) != s.end()) {
                    row.push_back(static_cast<int>(k));
                }
            }
            adj.push_back(std::move(row));
        }
        std::vector<int> match;
        if (max_bipartite_matching(adj, static_cast<int>(chosen_bundles.size()), match) !=
            static_cast<int>(agents.size())) {
            return std::nullopt;
        }
        ReductionStep step;
        step.rule = rule;
        for (std::size_t a = 0; a < agents.size(); ++a) {
            step.removed_agents.push_back(agents[a]);
            auto& granted = step.granted[agents[a]];
            for (int j : bundles[chosen_bundles[match[a]]]) {
                granted.push_back(inst.items[j]);
                step.removed_items.push_back(inst.items[j]);
            }
        }
        std::sort(step.removed_agents.begin(), step.removed_agents.end());
        return step;
    };

    std::vector<int> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);
    std::vector<int> all_bundles(nb);
    std::iota(all_bundles.begin(), all_bundles.end(), 0);
    if (auto full = make_step(everyone, all_bundles, "perfect-matching")) {
        if (full->removed_items.size() == static_cast<std::size_t>(inst.item_count())) {
            return full;
        }
    }
    // Smallest Hall violator Y among the bundles, subsets in increasing size.
    for (int size = 1; size <= nb; ++size) {
        for (std::uint32_t mask = 0; mask < (1U << nb); ++mask) {
            if (__builtin_popcount(mask) != size) {
                continue;
            }
            std::set<int> neighbours;
            std::vector<int> y;
            for (int b = 0; b < nb; ++b) {
                if (mask >> b & 1U) {
                    y.push_back(b);
                    neighbours.insert(satisfied[b].begin(), satisfied[b].end());
                }
            }
            if (static_cast<int>(neighbours.size()) >= size) {
                continue;
            }
            // Drop the one bundle whose size is not 1 or 2 (or the last one).
            int drop = y.back();
            for (int b : y) {
                int s = static_cast<int>(bundles[b].size());
                if (s != 1 && s != 2) {
                    drop = b;
                }
            }
            std::vector<int> rest;
            std::set<int> rest_neighbours;
            for (int b : y) {
                if (b != drop) {
                    rest.push_back(b);
                    rest_neighbours.insert(satisfied[b].begin(), satisfied[b].end());
                }
            }
            if (rest.empty()) {
                return std::nullopt;
            }
            std::vector<int> agents(rest_neighbours.begin(), rest_neighbours.end());
            if (agents.size() != rest.size()) {
                return std::nullopt;
            }
            return make_step(agents, rest, "small-bundles");
        }
    }
    return std::nullopt;
}

StepValidity validity(const Instance& stage, const std::vector<Value>& t, const ReductionStep& step) {
    StepValidity v;
    std::unordered_map<std::string, int> index = index_items(stage);
    for (const auto& [agent, bundle] : step.granted) {
        std::vector<int> items;
        for (const auto& id : bundle) {
            items.push_back(index.at(id));
        }
        if (value_of(stage, agent, items) < t[agent]) {
            v.removed_satisfied = false;
        }
    }
    Instance reduced = apply_reduction(stage, step);
    int k = 0;
    for (int i = 0; i < stage.agents; ++i) {
        if (std::find(step.removed_agents.begin(), step.removed_agents.end(), i) != step.removed_agents.end()) {
            continue;
        }
        if (mms_threshold(reduced, k).threshold < t[i]) {
            v.thresholds_preserved = false;
        }
        ++k;
    }
    return v;
}

}  // namespace

SopInstance to_sop(const Instance& inst) {
    SopInstance sop;
    sop.original = inst;
    sop.inst.agents = inst.agents;
    sop.inst.items = inst.items;
    const int m = inst.item_count();
    if (inst.has_forbidden()) {
        sop.inst.forbidden.assign(inst.agents, std::vector<bool>(m, false));
    }
    for (int i = 0; i < inst.agents; ++i) {
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return inst.value(i, b) < inst.value(i, a); });
        std::vector<Rational> row;
        std::vector<std::string> perm;
        for (int k = 0; k < m; ++k) {
            row.push_back(inst.utilities[i][order[k]]);
            perm.push_back(inst.items[order[k]]);
            if (inst.is_forbidden(i, order[k])) {
                sop.inst.forbidden[i][k] = true;
            }
        }
        sop.inst.utilities.push_back(std::move(row));
        sop.row_permutations.push_back(std::move(perm));
    }
    return sop;
}

Allocation lift_from_sop(const SopInstance& sop, const Allocation& alloc) {
    const Instance& orig = sop.original;
    Owners positions = owners_of(sop.inst, alloc);
    const int m = orig.item_count();
    std::vector<bool> taken(m, false);
    Owners owners(m, -1);
    for (int k = 0; k < m; ++k) {
        const int agent = positions[k];
        int best = -1;
        for (int j = 0; j < m; ++j) {
            if (!taken[j] && (best < 0 || orig.value(agent, best) < orig.value(agent, j))) {
                best = j;
            }
        }
        taken[best] = true;
        owners[best] = agent;
    }
    Allocation lifted = allocation_from_owners(orig, owners);
    std::vector<Value> t = thresholds_of(orig);
    if (meets(orig, lifted, t)) {
        return lifted;
    }
    if (auto found = exhaustive(orig, t, SearchBudget{})) {
        return *found;
    }
    throw Error("no MMS allocation found");
}

Allocation mms_partition_for_agent(const Instance& inst, int agent) {
    MmsThreshold best = mms_threshold(inst, agent);
    for (const Shape& s : {Shape(has_small_bundle), Shape(mostly_small)}) {
        if (auto owners = partition_with_shape(inst, agent, best.threshold, s)) {
            return allocation_from_owners(inst, *owners);
        }
    }
    return best.partition;
}

Instance apply_reduction(const Instance& stage, const ReductionStep& step) {
    std::set<std::string> gone(step.removed_items.begin(), step.removed_items.end());
    std::set<int> leaving(step.removed_agents.begin(), step.removed_agents.end());
    Instance out;
    std::vector<int> keep_items;
    for (int j = 0; j < stage.item_count(); ++j) {
        if (!gone.count(stage.items[j])) {
            keep_items.push_back(j);
            out.items.push_back(stage.items[j]);
        }
    }
    for (int i = 0; i < stage.agents; ++i) {
        if (leaving.count(i)) {
            continue;
        }
        std::vector<Rational> row;
        std::vector<bool> forb;
        for (int j : keep_items) {
            row.push_back(stage.utilities[i][j]);
            forb.push_back(stage.is_forbidden(i, j));
        }
        out.utilities.push_back(std::move(row));
        if (stage.has_forbidden()) {
            out.forbidden.push_back(std::move(forb));
        }
        ++out.agents;
    }
    return out;
}

StepValidity check_reduction_step(const Instance& stage, const ReductionStep& step) {
    return validity(stage, thresholds_of(stage), step);
}

std::optional<ReductionStep> find_valid_reduction(const Instance& inst) {
    const int n = inst.agents;
    const int m = inst.item_count();
    if (n == 0) {
        return std::nullopt;
    }
    std::vector<Value> t = thresholds_of(inst);

    // Every agent has an MMS partition with a singleton: give the largest-index singleton
    // item to its agent.
    std::vector<std::optional<Owners>> singles(n);
    bool all_single = true;
    for (int i = 0; i < n && all_single; ++i) {
        singles[i] = partition_with_shape(inst, i, t[i], has_singleton);
        all_single = singles[i].has_value();
    }
    if (all_single) {
        int agent = -1;
        int item = -1;
        for (int i = 0; i < n; ++i) {
            Bundles b = bundles_of(*singles[i], n);
            for (const auto& bundle : b) {
                if (bundle.size() == 1 && bundle[0] > item) {
                    item = bundle[0];
                    agent = i;
                }
            }
        }
        ReductionStep step;
        step.rule = "single-item";
        step.removed_agents = {agent};
        step.removed_items = {inst.items[item]};
        step.granted[agent] = {inst.items[item]};
        if (validity(inst, t, step).valid()) {
            return step;
        }
    }

    // Some agent has an MMS partition with n-1 bundles of one or two items.
    for (int i = 0; i < n; ++i) {
        auto owners = partition_with_shape(inst, i, t[i], mostly_small);
        if (!owners) {
            continue;
        }
        if (auto step = matching_step(inst, t, bundles_of(*owners, n))) {
            if (validity(inst, t, *step).valid()) {
                return step;
            }
        }
    }

    // A chores agent takes the least valuable item.
    if (m >= 1 && m <= n + 5) {
        for (int i = 0; i < n; ++i) {
            if (!agent_flags(inst, i).chores) {
                continue;
            }
            ReductionStep step;
            step.rule = "chores-agent";
            step.removed_agents = {i};
            step.removed_items = {inst.items[m - 1]};
            step.granted[i] = {inst.items[m - 1]};
            if (validity(inst, t, step).valid()) {
                return step;
            }
            break;
        }
    }
    return std::nullopt;
}

std::optional<Allocation> solve_three_agent(const Instance& inst, bool* fallback) {
    if (inst.agents != 3 || inst.item_count() > 8) {
        throw PreconditionError("the three-agent construction needs 3 agents and at most 8 items");
    }
    if (fallback) {
        *fallback = false;
    }
    const std::vector<Value> t = thresholds_of(inst);

    std::set<std::string> dummies;
    Instance eight = padded(inst, 8, dummies);
    SopInstance sop8 = to_sop(eight);
    {
        // A bundle of at most one item, or two 2-bundles, yields two disjoint pairs.
        auto parts = preferred_partitions(sop8.inst, t,
                                          {has_small_bundle,
                                           [](const std::vector<int>& s) {
                                               return std::count(s.begin(), s.end(), 2) >= 2;
                                           },
                                           any_shape});
        std::vector<Owners> candidates;
        disjointness_candidates(8, parts, candidates);
        if (auto a = first_working(sop8.inst, t, candidates)) {
            return without(lift_from_sop(sop8, *a), dummies);
        }
    }
    {
        // Every partition is 2 + 3 + 3: one more dummy makes them three 3-bundles.
        Instance nine = padded(eight, 9, dummies);
        SopInstance sop9 = to_sop(nine);
        auto parts = preferred_partitions(sop9.inst, t,
                                          {[](const std::vector<int>& s) {
                                               return std::all_of(s.begin(), s.end(),
                                                                  [](int x) { return x == 3; });
                                           },
                                           any_shape});
        std::vector<Owners> candidates;
        triple_candidates(9, parts, candidates);
        disjointness_candidates(9, parts, candidates);
        if (auto a = first_working(sop9.inst, t, candidates)) {
            return without(lift_from_sop(sop9, *a), dummies);
        }
    }
    if (fallback) {
        *fallback = true;
    }
    return exhaustive(inst, t, SearchBudget{});
}

Instance mimic_instance(const Instance& inst, int agent) {
    std::vector<Value> t = thresholds_of(inst);
    if (t[agent] < Value()) {
        throw PreconditionError("agent " + std::to_string(agent) + " has a negative MMS threshold");
    }
    Instance out = inst;
    for (int j = 0; j < inst.agents; ++j) {
        if (t[j] < Value()) {
            out.utilities[j] = inst.utilities[agent];
            if (inst.has_forbidden()) {
                out.forbidden[j] = inst.forbidden[agent];
            }
        }
    }
    return out;
}

namespace {

// Repeatedly applies valid reductions on the sorted form of `inst`, finishing with
// divide-and-choose or the three-agent construction.
std::optional<Allocation> reduce_and_solve(const Instance& inst, std::vector<ReductionStep>& trail) {
    std::set<std::string> dummies;
    Instance full = padded(inst, inst.agents + 5, dummies);
    SopInstance sop = to_sop(full);
    Instance cur = sop.inst;
    std::vector<int> labels(inst.agents);
    std::iota(labels.begin(), labels.end(), 0);
    std::map<std::string, int> owner;
    while (cur.agents > 0) {
        std::optional<Allocation> base;
        if (cur.agents == 1) {
            base = everything_to(cur, 0);
        } else if (cur.agents == 2) {
            base = divide_and_choose(cur);
        } else if (cur.agents == 3 && cur.item_count() <= 8) {
            base = solve_three_agent(cur);
        }
        if (base) {
            for (int i = 0; i < cur.agents; ++i) {
                for (const auto& id : base->bundles[i]) {
                    owner[id] = labels[i];
                }
            }
            cur.items.clear();
            break;
        }
        auto step = find_valid_reduction(cur);
        if (!step) {
            return std::nullopt;
        }
        step->stage = cur;
        step->agent_labels = labels;
        for (const auto& [agent, bundle] : step->granted) {
            for (const auto& id : bundle) {
                owner[id] = labels[agent];
            }
        }
        Instance next = apply_reduction(cur, *step);
        std::vector<int> next_labels;
        for (int i = 0; i < cur.agents; ++i) {
            if (std::find(step->removed_agents.begin(), step->removed_agents.end(), i) ==
                step->removed_agents.end()) {
                next_labels.push_back(labels[i]);
            }
        }
        trail.push_back(std::move(*step));
        cur = std::move(next);
        labels = std::move(next_labels);
    }
    if (!cur.items.empty() || owner.size() != sop.inst.items.size()) {
        return std::nullopt;
    }
    Allocation positions;
    positions.bundles.assign(inst.agents, {});
    for (const auto& id : sop.inst.items) {
        positions.bundles[owner.at(id)].push_back(id);
    }
    return without(lift_from_sop(sop, positions), dummies);
}

}  // namespace

MmsSolution solve_mms(const Instance& inst, const SearchBudget& budget) {
    MmsSolution sol;
    const int n = inst.agents;
    try {
        sol.thresholds = thresholds_of(inst);
    } catch (const SizeGuardError&) {
        sol.verdict = MmsVerdict::unknown;
        sol.route = "exhaustive";
        return sol;
    }
    const std::vector<Value>& t = sol.thresholds;
    std::optional<Allocation> result;

    bool any_nonneg = false;
    bool any_positive = false;
    bool all_chores = true;
    for (int i = 0; i < n; ++i) {
        any_nonneg = any_nonneg || !(t[i] < Value());
        any_positive = any_positive || Value() < t[i];
        all_chores = all_chores && agent_flags(inst, i).chores;
    }

    if (n == 1) {
        sol.route = "single-agent";
        result = everything_to(inst, 0);
    } else if (n == 2) {
        sol.route = "divide-and-choose";
        result = divide_and_choose(inst);
    } else if (n == 3 && inst.item_count() <= 8) {
        sol.route = "three-agent";
        bool fell_back = false;
        result = solve_three_agent(inst, &fell_back);
        sol.fallback = fell_back;
    } else if (any_nonneg) {
        sol.route = "non-negative-agent";
        if (!any_positive) {
            // Every threshold is at most zero and some agent's is exactly zero.
            int zero = 0;
            while (t[zero] < Value()) {
                ++zero;
            }
            result = everything_to(inst, zero);
        } else {
            int agent = 0;
            while (!(Value() < t[agent])) {
                ++agent;
            }
            Instance mimicked = mimic_instance(inst, agent);
            if (auto a = reduce_and_solve(mimicked, sol.trail)) {
                // Agents whose real utility misses their threshold hand their bundle over.
                for (int j = 0; j < n; ++j) {
                    if (j != agent && bundle_value(inst, j, a->bundles[j]) < t[j]) {
                        auto& into = a->bundles[agent];
                        into.insert(into.end(), a->bundles[j].begin(), a->bundles[j].end());
                        a->bundles[j].clear();
                    }
                }
                auto index = index_items(inst);
                std::sort(a->bundles[agent].begin(), a->bundles[agent].end(),
                          [&](const std::string& x, const std::string& y) { return index[x] < index[y]; });
                result = a;
            }
        }
    } else if (all_chores) {
        sol.route = "chores-agents";
        result = reduce_and_solve(inst, sol.trail);
    }

    if (result && meets(inst, *result, t)) {
        sol.verdict = MmsVerdict::found;
        sol.allocation = result;
        return sol;
    }
    if (!sol.route.empty()) {
        sol.fallback = true;
    } else {
        sol.route = "exhaustive";
    }
    SearchBudget capped = budget;
    capped.on_exceed = OnExceed::unknown;
    SearchStatus status = SearchStatus::unknown;
    auto found = exhaustive(inst, t, capped, &status);
    if (found) {
        sol.verdict = MmsVerdict::found;
        sol.allocation = found;
    } else {
        sol.verdict = status == SearchStatus::none ? MmsVerdict::none : MmsVerdict::unknown;
    }
    return sol;
}

}  // namespace fairdiv
