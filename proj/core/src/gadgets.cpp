#include "fairdiv/gadgets.hpp"

#include "fairdiv/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fairdiv {

std::vector<std::string> validate_circuit(const Circuit& c) {
    std::vector<std::string> errors;
    std::set<std::string> defined;
    for (const Gate& gate : c.gates) {
        if (gate.id.empty()) {
            errors.push_back("gate with an empty id");
        }
        std::size_t want = gate.kind == GateKind::not_gate ? 1 : gate.kind == GateKind::or_gate ? 2 : 0;
        if (gate.inputs.size() != want) {
            errors.push_back("gate " + gate.id + " has " + std::to_string(gate.inputs.size()) + " inputs, expected " +
                             std::to_string(want));
        }
        for (const auto& in : gate.inputs) {
            if (!defined.count(in)) {
                errors.push_back("gate " + gate.id + " reads " + in + " before it is defined");
            }
        }
        if (!defined.insert(gate.id).second) {
            errors.push_back("gate " + gate.id + " is defined twice");
        }
    }
    if (c.output.empty()) {
        errors.push_back("missing OUTPUT line");
    } else if (!defined.count(c.output)) {
        errors.push_back("output " + c.output + " is not a gate");
    }
    return errors;
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::vector<std::string> tok;
        for (std::string w; words >> w;) {
            tok.push_back(w);
        }
        if (tok.empty()) {
            continue;
        }
        auto fail = [&](const std::string& why) {
            throw InputError("circuit line " + std::to_string(number) + ": " + why);
        };
        if (tok[0] == "OUTPUT") {
            if (tok.size() != 2) {
                fail("expected `OUTPUT id`");
            }
            if (!c.output.empty()) {
                fail("second OUTPUT line");
            }
            c.output = tok[1];
            continue;
        }
        if (!c.output.empty()) {
            fail("gates after the OUTPUT line");
        }
        if (tok.size() < 3 || tok[1] != "=") {
            fail("expected `id = INPUT | TRUE | NOT id | OR id id`");
        }
        Gate gate;
        gate.id = tok[0];
        const std::string& op = tok[2];
        if (op == "INPUT") {
            gate.kind = GateKind::input;
        } else if (op == "TRUE") {
            gate.kind = GateKind::true_const;
        } else if (op == "NOT") {
            gate.kind = GateKind::not_gate;
        } else if (op == "OR") {
            gate.kind = GateKind::or_gate;
        } else if (op == "AND") {
            fail("AND is not supported; rewrite `x = AND a b` as NOT(OR(NOT a, NOT b))");
        } else {
            fail("unknown gate " + op);
        }
        gate.inputs.assign(tok.begin() + 3, tok.end());
        c.gates.push_back(std::move(gate));
    }
    auto errors = validate_circuit(c);
    if (!errors.empty()) {
        throw InputError(errors.front());
    }
    return c;
}

std::string format_circuit(const Circuit& c) {
    std::ostringstream out;
    for (const Gate& g : c.gates) {
        out << g.id << " = ";
        switch (g.kind) {
            case GateKind::input:
                out << "INPUT";
                break;
            case GateKind::true_const:
                out << "TRUE";
                break;
            case GateKind::not_gate:
                out << "NOT";
                break;
            case GateKind::or_gate:
                out << "OR";
                break;
        }
        for (const auto& in : g.inputs) {
            out << ' ' << in;
        }
        out << '\n';
    }
    out << "OUTPUT " << c.output << '\n';
    return out.str();
}

int circuit_input_count(const Circuit& c) {
    return static_cast<int>(
        std::count_if(c.gates.begin(), c.gates.end(), [](const Gate& g) { return g.kind == GateKind::input; }));
}

std::map<std::string, bool> evaluate_circuit(const Circuit& c, const std::vector<bool>& inputs) {
    if (static_cast<int>(inputs.size()) != circuit_input_count(c)) {
        throw InputError("assignment has " + std::to_string(inputs.size()) + " values for " +
                         std::to_string(circuit_input_count(c)) + " inputs");
    }
    std::map<std::string, bool> value;
    std::size_t next = 0;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::input:
                value[g.id] = inputs[next++];
                break;
            case GateKind::true_const:
                value[g.id] = true;
                break;
            case GateKind::not_gate:
                value[g.id] = !value.at(g.inputs[0]);
                break;
            case GateKind::or_gate:
                value[g.id] = value.at(g.inputs[0]) || value.at(g.inputs[1]);
                break;
        }
    }
    return value;
}

namespace {

struct Wire {
    int edge = -1;
    int black = -1;
    int white = -1;
};

class GadgetBuilder {
public:
    GadgetBuilder(int q, Rational alpha, Rational beta) : q_(q), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

    int vertex(bool black) {
        black_.push_back(black);
        return g_.vertices++;
    }

    int edge(const std::string& id, int a, int b, bool heavy) {
        const Rational& w = heavy ? alpha_ : beta_;
        g_.edges.push_back(Edge{id, a, b, w, w});
        return static_cast<int>(g_.edges.size()) - 1;
    }

    Wire wire(const std::string& id) {
        Wire w;
        w.black = vertex(true);
        w.white = vertex(false);
        w.edge = edge(id, w.black, w.white, true);
        return w;
    }

    // Forces its v8-v9 edge towards v9 (true). With `target` the gadget is attached to an
    // existing wire, whose black endpoint plays v9.
    Wire true_gadget(const std::string& id, const Wire* target) {
        Wire out = target ? *target : wire(id);
        const int v8 = out.white;
        const int v1 = vertex(false);
        const int v2 = vertex(true);
        const int v3 = vertex(false);
        const int v4 = vertex(true);
        const int v5 = vertex(false);
        const int v6 = vertex(true);
        const int v7 = vertex(true);
        const std::string p = id + ".";
        edge(p + "h17", v1, v7, true);
        edge(p + "h23", v2, v3, true);
        edge(p + "h34", v3, v4, true);
        edge(p + "h56", v5, v6, true);
        edge(p + "l12", v1, v2, false);
        edge(p + "l23", v2, v3, false);
        edge(p + "l34", v3, v4, false);
        edge(p + "l45", v4, v5, false);
        for (int k = 1; k <= q_; ++k) {
            edge(p + "l61." + std::to_string(k), v6, v1, false);
        }
        edge(p + "l78", v7, v8, false);
        return out;
    }

    Wire not_gadget(const std::string& id, const Wire& x) {
        const int v1 = x.black;
        const int w5 = x.white;
        const int v2 = vertex(false);
        const int v3 = vertex(true);
        const int v4 = vertex(false);
        const int v5 = vertex(true);
        const int w4 = vertex(true);
        const int w3 = vertex(false);
        const int w2 = vertex(true);
        const int w1 = vertex(false);
        const std::string p = id + ".";
        Wire out;
        out.black = v5;
        out.white = w1;
        out.edge = edge(id, v5, w1, true);
        edge(p + "hv23", v2, v3, true);
        edge(p + "hv34", v3, v4, true);
        edge(p + "hw43", w4, w3, true);
        edge(p + "hw32", w3, w2, true);
        edge(p + "lv12", v1, v2, false);
        edge(p + "lv23", v2, v3, false);
        edge(p + "lv34", v3, v4, false);
        edge(p + "lv45", v4, v5, false);
        edge(p + "lw54", w5, w4, false);
        edge(p + "lw43", w4, w3, false);
        edge(p + "lw32", w3, w2, false);
        edge(p + "lw21", w2, w1, false);
        return out;
    }

    Wire or_gadget(const std::string& id, const Wire& x, const Wire& y) {
        const int v = vertex(true);
        const int w = vertex(false);
        const int u = vertex(true);
        const int vp = vertex(false);
        const int up = vertex(false);
        const std::string p = id + ".";
        Wire out;
        out.black = vertex(true);
        out.white = vertex(false);
        out.edge = edge(id, out.black, out.white, true);
        edge(p + "hvw", v, w, true);
        edge(p + "hwu", w, u, true);
        edge(p + "hvv", v, vp, true);
        edge(p + "huu", u, up, true);
        edge(p + "lxv", x.white, v, false);
        edge(p + "lwc", w, out.black, false);
        edge(p + "luy", u, y.white, false);
        edge(p + "lxc", x.black, out.white, false);
        edge(p + "lyc", y.black, out.white, false);
        return out;
    }

    // A second heavy edge forced to agree with `x`.
    Wire duplicate(const std::string& id, const Wire& x) {
        Wire out = wire(id);
        edge(id + ".la", x.black, out.white, false);
        edge(id + ".lb", x.white, out.black, false);
        return out;
    }

    Multigraph& graph() { return g_; }
    std::vector<bool>& colours() { return black_; }

private:
    int q_;
    Rational alpha_;
    Rational beta_;
    Multigraph g_;
    std::vector<bool> black_;
};

}  // namespace

CircuitGadget build_circuit_gadget(const Circuit& c, int q, const Rational& alpha, const Rational& beta) {
    auto errors = validate_circuit(c);
    if (!errors.empty()) {
        throw InputError(errors.front());
    }
    if (q < 2) {
        throw PreconditionError("the circuit reduction needs q >= 2");
    }
    if (beta < 0 || !(alpha > beta * q)) {
        throw PreconditionError("the circuit reduction needs alpha > q * beta >= 0");
    }
    std::map<std::string, int> reads;
    for (const Gate& gate : c.gates) {
        for (const auto& in : gate.inputs) {
            ++reads[in];
        }
    }
    ++reads[c.output];

    GadgetBuilder b(q, alpha, beta);
    CircuitGadget out;
    // Copies of each wire, handed out one per read. Copy k + 1 is duplicated from copy k.
    std::map<std::string, std::vector<Wire>> copies;
    std::map<std::string, std::size_t> handed;
    auto take = [&](const std::string& id) { return copies.at(id).at(handed[id]++); };

    for (const Gate& gate : c.gates) {
        Wire w;
        switch (gate.kind) {
            case GateKind::input:
                w = b.wire(gate.id);
                break;
            case GateKind::true_const:
                w = b.true_gadget(gate.id, nullptr);
                break;
            case GateKind::not_gate:
                w = b.not_gadget(gate.id, take(gate.inputs[0]));
                break;
            case GateKind::or_gate: {
                Wire x = take(gate.inputs[0]);
                Wire y = take(gate.inputs[1]);
                w = b.or_gadget(gate.id, x, y);
                break;
            }
        }
        out.wire[gate.id] = w.edge;
        auto& list = copies[gate.id];
        list.push_back(w);
        for (int k = 1; k < reads[gate.id]; ++k) {
            list.push_back(b.duplicate(gate.id + "#" + std::to_string(k + 1), list.back()));
        }
    }
    Wire result = take(c.output);
    b.true_gadget("force", &result);
    out.output_edge = result.edge;

    out.bg.g = b.graph();
    out.bg.alpha = alpha;
    out.bg.beta = beta;
    out.black = b.colours();
    for (const Edge& e : out.bg.g.edges) {
        if (out.black[e.a] == out.black[e.b]) {
            throw std::logic_error("circuit gadget edge " + e.id + " joins two vertices of one colour");
        }
    }
    for (const auto& k : classify_components(out.bg)) {
        if (k.kind != ComponentKind::trivial && !k.ntom) {
            throw std::logic_error("circuit gadget has a heavy component that is not an NTOM");
        }
    }
    return out;
}

BiValuedGraph ntom_pair_graph(int q, const Rational& alpha, const Rational& beta) {
    if (q < 1) {
        throw PreconditionError("q must be at least 1");
    }
    BiValuedGraph bg;
    bg.alpha = alpha;
    bg.beta = beta;
    bg.g.vertices = 2;
    bg.g.edges.push_back(Edge{"h", 0, 1, alpha, alpha});
    for (int v = 0; v < 2; ++v) {
        for (int k = 1; k <= q; ++k) {
            std::string id = std::string(v == 0 ? "la" : "lb") + std::to_string(k);
            bg.g.edges.push_back(Edge{id, v, v, beta, beta});
        }
    }
    return bg;
}

namespace {

void require_partition_set(const std::vector<long>& s) {
    if (s.empty()) {
        throw InputError("partition set must be non-empty");
    }
    for (long x : s) {
        if (x <= 0) {
            throw InputError("partition set elements must be positive");
        }
    }
}

void add_element_edges(Multigraph& g, const std::vector<long>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        Rational w(-s[i]);
        g.edges.push_back(Edge{"e" + std::to_string(i + 1), 0, 1, w, w});
    }
}

}  // namespace

Multigraph build_partition_selfloop_gadget(const std::vector<long>& s, PartitionCriterion criterion) {
    require_partition_set(s);
    Multigraph g;
    g.vertices = 2;
    add_element_edges(g, s);
    Rational loop = 0;
    if (criterion == PartitionCriterion::ef1) {
        loop = Rational(-(*std::max_element(s.begin(), s.end()) + 1));
    }
    g.edges.push_back(Edge{"la", 0, 0, loop, loop});
    g.edges.push_back(Edge{"lb", 1, 1, loop, loop});
    return g;
}

Multigraph build_partition_triangle_gadget(const std::vector<long>& s) {
    require_partition_set(s);
    Multigraph g;
    g.vertices = 3;
    add_element_edges(g, s);
    long total = 0;
    for (long x : s) {
        total += x;
    }
    Rational w(-total);
    g.edges.push_back(Edge{"ca1", 2, 0, w, w});
    g.edges.push_back(Edge{"ca2", 2, 0, w, w});
    g.edges.push_back(Edge{"cb1", 2, 1, w, w});
    g.edges.push_back(Edge{"cb2", 2, 1, w, w});
    return g;
}

}  // namespace fairdiv
