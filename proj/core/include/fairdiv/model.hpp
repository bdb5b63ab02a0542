#pragma once

#include "fairdiv/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fairdiv {

// A utility that may include forbidden items. Ordered lexicographically:
// more forbidden items is always worse, ties compare the rational part.
struct Value {
    long forbidden = 0;
    Rational amount;

    Value() = default;
    Value(long forbidden_count, Rational amt) : forbidden(forbidden_count), amount(std::move(amt)) {}
    explicit Value(Rational amt) : amount(std::move(amt)) {}

    Value& operator+=(const Value& o) {
        forbidden += o.forbidden;
        amount += o.amount;
        return *this;
    }
    Value& operator-=(const Value& o) {
        forbidden -= o.forbidden;
        amount -= o.amount;
        return *this;
    }
    friend Value operator+(Value a, const Value& b) { return a += b; }
    friend Value operator-(Value a, const Value& b) { return a -= b; }
    friend bool operator==(const Value& a, const Value& b) {
        return a.forbidden == b.forbidden && a.amount == b.amount;
    }
    friend bool operator<(const Value& a, const Value& b) {
        if (a.forbidden != b.forbidden) {
            return a.forbidden > b.forbidden;
        }
        return a.amount < b.amount;
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    friend bool operator>(const Value& a, const Value& b) { return b < a; }
    friend bool operator<=(const Value& a, const Value& b) { return !(b < a); }
    friend bool operator>=(const Value& a, const Value& b) { return !(a < b); }
};

std::string format_value(const Value& v);

struct Instance {
    int agents = 0;
    std::vector<std::string> items;
    std::vector<std::vector<Rational>> utilities;
    // Either empty (nothing forbidden) or agents x items.
    std::vector<std::vector<bool>> forbidden;

    int item_count() const { return static_cast<int>(items.size()); }
    bool is_forbidden(int agent, int item) const {
        return !forbidden.empty() && forbidden[agent][item];
    }
    bool has_forbidden() const;
    Value value(int agent, int item) const {
        if (is_forbidden(agent, item)) {
            return Value(1, Rational(0));
        }
        return Value(utilities[agent][item]);
    }
};

// Builds an instance with items named o1..om.
Instance make_instance(std::vector<std::vector<Rational>> utilities);
Instance make_instance(const std::vector<std::vector<long>>& utilities);

struct Edge {
    std::string id;
    int a = 0;
    int b = 0;
    Rational wa;
    Rational wb;

    bool is_loop() const { return a == b; }
    int other(int v) const { return v == a ? b : a; }
    const Rational& weight_at(int v) const { return v == a ? wa : wb; }
};

struct Multigraph {
    int vertices = 0;
    std::vector<Edge> edges;

    bool is_symmetric() const;
    std::optional<int> edge_index(const std::string& id) const;
};

struct Allocation {
    std::vector<std::vector<std::string>> bundles;
    // A partial allocation may leave items unallocated.
    bool partial = false;
};

struct Orientation {
    std::map<std::string, int> assign;
    bool partial = false;
};

// Owner per item index; -1 marks an unallocated item.
using Owners = std::vector<int>;

std::vector<std::string> validate_instance(const Instance& inst);
std::vector<std::string> validate_multigraph(const Multigraph& g);
std::vector<std::string> validate_allocation(const Instance& inst, const Allocation& alloc);
std::vector<std::string> validate_orientation(const Multigraph& g, const Orientation& pi);

std::unordered_map<std::string, int> index_items(const Instance& inst);

// Throws InputError when the allocation is malformed for the instance.
Owners owners_of(const Instance& inst, const Allocation& alloc);
// Bundles list items in instance order.
Allocation allocation_from_owners(const Instance& inst, const Owners& owners);

// Sum of per-item utilities. Throws InputError on unknown ids and on forbidden items
// (use bundle_value for those).
Rational bundle_utility(const Instance& inst, int agent, const std::vector<std::string>& bundle);
Value bundle_value(const Instance& inst, int agent, const std::vector<std::string>& bundle);

// One item per edge (same id); u_i(e) is the weight at i when incident, else 0.
Instance graphical_to_instance(const Multigraph& g);

// Receiver per edge index; -1 marks an unoriented edge.
using Receivers = std::vector<int>;
Receivers receivers_of(const Multigraph& g, const Orientation& pi);
Orientation orientation_from_receivers(const Multigraph& g, const Receivers& recv);
Allocation orientation_to_allocation(const Multigraph& g, const Orientation& pi);

enum class AgentClass { goods, chores, mixed };
struct AgentFlags {
    bool goods = false;
    bool chores = false;
};
AgentFlags agent_flags(const Instance& inst, int agent);
// An all-zero row reports goods.
AgentClass agent_class(const Instance& inst, int agent);
std::string to_string(AgentClass c);

// Goods instance: nothing negative or forbidden. Chores instance: nothing positive.
// All-zero instances count as goods.
enum class InstanceKind { goods, chores, mixed };
InstanceKind instance_kind(const Instance& inst);

}  // namespace fairdiv
