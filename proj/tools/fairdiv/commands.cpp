#include "commands.hpp"

#include <fairdiv/allocators.hpp>
#include <fairdiv/chores_orient.hpp>
#include <fairdiv/dot.hpp>
#include <fairdiv/efx_multigraph.hpp>
#include <fairdiv/errors.hpp>
#include <fairdiv/fairness.hpp>
#include <fairdiv/gadgets.hpp>
#include <fairdiv/mms_solver.hpp>
#include <fairdiv/oracle.hpp>

#include <fstream>
#include <sstream>

namespace fairdiv::cli {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
        if (!part.empty()) {
            out.push_back(part);
        }
    }
    return out;
}

namespace {

long parse_long(const std::string& s) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw InputError("not an integer: " + s);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
}

Instance load_instance(const std::string& path) {
    Instance inst = instance_from_json(read_json_file(path));
    auto errors = validate_instance(inst);
    if (!errors.empty()) {
        throw InputError(path + ": " + errors.front());
    }
    return inst;
}

Multigraph load_graph(const std::string& path) {
    Multigraph g = multigraph_from_json(read_json_file(path));
    auto errors = validate_multigraph(g);
    if (!errors.empty()) {
        throw InputError(path + ": " + errors.front());
    }
    return g;
}

json values_to_json(const std::vector<Value>& values) {
    json out = json::array();
    for (const auto& v : values) {
        out.push_back(value_to_json(v));
    }
    return out;
}

json step_to_json(const ReductionStep& step) {
    json removed = json::array();
    json granted = json::object();
    for (int a : step.removed_agents) {
        removed.push_back(step.agent_labels[a]);
    }
    for (const auto& [a, bundle] : step.granted) {
        granted[std::to_string(step.agent_labels[a])] = bundle;
    }
    return json{{"rule", step.rule},
                {"removed_agents", removed},
                {"removed_items", step.removed_items},
                {"granted", granted}};
}

json status_json(SearchStatus s) {
    switch (s) {
        case SearchStatus::found:
            return true;
        case SearchStatus::none:
            return false;
        case SearchStatus::unknown:
            break;
    }
    return nullptr;
}

int status_code(SearchStatus s) {
    switch (s) {
        case SearchStatus::found:
            return kOk;
        case SearchStatus::none:
            return kNegative;
        case SearchStatus::unknown:
            break;
    }
    return kBudget;
}

SearchBudget soft(SearchBudget budget) {
    budget.on_exceed = OnExceed::unknown;
    return budget;
}

}  // namespace

Outcome run_check(const CheckArgs& args, const SearchBudget& budget) {
    Instance inst = load_instance(args.instance);
    Allocation alloc = allocation_from_json(read_json_file(args.allocation));
    CheckOptions options;
    options.budget = budget;
    options.allow_partial = alloc.partial;
    Outcome out;
    out.doc = json::array();
    for (const auto& name : split_list(args.criteria)) {
        FairnessReport r = check(inst, alloc, parse_criterion(name), options);
        if (!r.holds) {
            out.code = kNegative;
        }
        out.doc.push_back(to_json(r));
    }
    return out;
}

Outcome run_allocate(const AllocateArgs& args) {
    Instance inst = load_instance(args.instance);
    PickingOrder order;
    for (const auto& part : split_list(args.order)) {
        order.push_back(static_cast<int>(parse_long(part)));
    }
    if ((!order.empty() || args.allow_mixed) && args.algo != "rr") {
        throw InputError("--order and --allow-mixed only apply to rr");
    }
    Allocation alloc;
    if (args.algo == "rr") {
        alloc = round_robin(inst, order, RoundRobinOptions{args.allow_mixed});
    } else if (args.algo == "drr") {
        alloc = double_round_robin(inst);
    } else if (args.algo == "ece") {
        alloc = envy_cycle_elimination(inst);
    } else if (args.algo == "ttece") {
        alloc = top_trading_ece(inst);
    } else if (args.algo == "dece") {
        alloc = double_ece(inst);
    } else {
        throw InputError("unknown algorithm " + args.algo);
    }
    Outcome out;
    out.doc = json{{"algorithm", args.algo},
                   {"allocation", to_json(alloc)},
                   {"report", to_json(check(inst, alloc, Criterion::ef1))}};
    return out;
}

Outcome run_mms(const MmsArgs& args, const SearchBudget& budget) {
    Instance inst = load_instance(args.instance);
    Outcome out;
    if (args.thresholds_only) {
        MmsProfile profile = mms_profile(inst);
        json partitions = json::array();
        for (const auto& p : profile.witnesses) {
            partitions.push_back(to_json(p));
        }
        out.doc = json{{"thresholds", values_to_json(profile.thresholds)}, {"partitions", partitions}};
        return out;
    }
    MmsSolution sol = solve_mms(inst, budget);
    json trail = json::array();
    for (const auto& step : sol.trail) {
        trail.push_back(step_to_json(step));
    }
    out.doc = json{{"verdict", to_string(sol.verdict)},
                   {"route", sol.route},
                   {"fallback", sol.fallback},
                   {"thresholds", values_to_json(sol.thresholds)},
                   {"trail", trail}};
    if (sol.allocation) {
        out.doc["allocation"] = to_json(*sol.allocation);
    }
    out.code = sol.verdict == MmsVerdict::found ? kOk : sol.verdict == MmsVerdict::none ? kNegative : kBudget;
    return out;
}

Outcome run_orient(const OrientArgs& args, const SearchBudget& budget) {
    Multigraph g = load_graph(args.graph);
    const Criterion criterion = parse_criterion(args.criterion);
    if (criterion != Criterion::ef1 && criterion != Criterion::efx0) {
        throw InputError("orient supports --criterion ef1 or efx0");
    }
    if (args.goods && args.chores) {
        throw InputError("--goods and --chores are exclusive");
    }
    bool goods = args.goods;
    if (!args.goods && !args.chores) {
        goods = true;
        for (const Edge& e : g.edges) {
            if (e.wa < 0 || e.wb < 0) {
                goods = false;
            }
        }
    }
    for (const Edge& e : g.edges) {
        if (goods ? (e.wa < 0 || e.wb < 0) : (e.wa > 0 || e.wb > 0)) {
            throw InputError("edge " + e.id + " does not fit a " + (goods ? "goods" : "chores") + " graph");
        }
    }

    std::optional<Orientation> result;
    std::string method;
    SearchStatus status = SearchStatus::none;
    json extra = json::object();
    auto search = [&] {
        auto r = search_orientation(g, criterion, soft(budget));
        status = r.status;
        result = r.witness;
        method = "search";
    };

    if (goods && criterion == Criterion::efx0) {
        BiValuedGraph bg;
        if (args.alpha || args.beta) {
            if (!args.alpha || !args.beta) {
                throw InputError("--alpha and --beta go together");
            }
            bg.g = g;
            bg.alpha = parse_rational(*args.alpha);
            bg.beta = parse_rational(*args.beta);
            auto errors = validate_bivalued(bg);
            if (!errors.empty()) {
                throw InputError(errors.front());
            }
        } else {
            bg = infer_bivalued(g);
        }
        BivaluedResult r = efx_orient_bivalued(bg);
        extra["verdict"] = to_string(r.verdict);
        json kinds = json::array();
        for (const auto& k : r.components) {
            kinds.push_back(json{{"vertices", k.vertices}, {"kind", to_string(k.kind)}});
        }
        extra["components"] = kinds;
        if (r.verdict == BivaluedVerdict::oriented) {
            result = r.orientation;
            status = SearchStatus::found;
            method = r.fallback ? "bivalued+search" : "bivalued";
        } else {
            search();
        }
    } else if (goods) {
        search();
    } else {
        bool simple = true;
        try {
            require_chores_graph(g);
        } catch (const PreconditionError&) {
            simple = false;
        }
        if (simple) {
            result = criterion == Criterion::ef1 ? ef1_orient_graph(g) : efx_orient_chores(g);
            status = result ? SearchStatus::found : SearchStatus::none;
            method = criterion == Criterion::ef1 ? "ef1-components" : "pd-vertex-cover";
        } else {
            search();
        }
    }

    Outcome out;
    out.code = status_code(status);
    out.doc = json{{"exists", status_json(status)}, {"method", method}};
    out.doc.update(extra);
    if (result) {
        out.doc["orientation"] = to_json(*result);
        Instance inst = graphical_to_instance(g);
        out.doc["report"] = to_json(check(inst, orientation_to_allocation(g, *result), criterion));
    }
    if (!args.emit_dot.empty()) {
        write_text(args.emit_dot, export_dot(g, result, DotOptions{true}));
        out.doc["dot"] = args.emit_dot;
    }
    return out;
}

Outcome run_circuit_gadget(const CircuitGadgetArgs& args) {
    Circuit c = parse_circuit(read_text(args.file));
    CircuitGadget gadget = build_circuit_gadget(c, args.q, parse_rational(args.alpha), parse_rational(args.beta));
    json doc = to_json(gadget.bg.g);
    doc["alpha"] = rational_to_json(gadget.bg.alpha);
    doc["beta"] = rational_to_json(gadget.bg.beta);
    doc["black"] = gadget.black;
    json wires = json::object();
    for (const auto& [gate, edge] : gadget.wire) {
        wires[gate] = gadget.bg.g.edges[edge].id;
    }
    doc["wires"] = wires;
    doc["output_edge"] = gadget.bg.g.edges[gadget.output_edge].id;
    Outcome out;
    if (args.output.empty()) {
        out.doc = std::move(doc);
    } else {
        write_text(args.output, doc.dump(2) + "\n");
        out.doc = json{{"written", args.output},
                       {"vertices", gadget.bg.g.vertices},
                       {"edges", gadget.bg.g.edges.size()}};
    }
    return out;
}

Outcome run_partition_gadget(const PartitionGadgetArgs& args) {
    std::vector<long> s;
    for (const auto& part : split_list(args.set)) {
        s.push_back(parse_long(part));
    }
    Multigraph g;
    if (args.variant == "selfloop") {
        const Criterion criterion = parse_criterion(args.criterion);
        if (criterion != Criterion::ef1 && criterion != Criterion::efx0) {
            throw InputError("partition gadgets support --criterion ef1 or efx0");
        }
        g = build_partition_selfloop_gadget(
            s, criterion == Criterion::ef1 ? PartitionCriterion::ef1 : PartitionCriterion::efx0);
    } else if (args.variant == "triangle") {
        g = build_partition_triangle_gadget(s);
    } else {
        throw InputError("unknown variant " + args.variant);
    }
    json doc = to_json(g);
    Outcome out;
    if (args.output.empty()) {
        out.doc = std::move(doc);
    } else {
        write_text(args.output, doc.dump(2) + "\n");
        out.doc = json{{"written", args.output}, {"vertices", g.vertices}, {"edges", g.edges.size()}};
    }
    return out;
}

Outcome run_oracle(const OracleArgs& args, const SearchBudget& budget) {
    if (args.graph.empty() == args.instance.empty()) {
        throw InputError("oracle needs exactly one of --graph and --instance");
    }
    Outcome out;
    if (!args.graph.empty()) {
        Criterion criterion;
        if (args.exists == "efx0-orientation") {
            criterion = Criterion::efx0;
        } else if (args.exists == "ef1-orientation") {
            criterion = Criterion::ef1;
        } else {
            throw InputError("with --graph, --exists takes efx0-orientation or ef1-orientation");
        }
        Multigraph g = load_graph(args.graph);
        SearchResult<Orientation> r;
        if (args.search == "enumerate") {
            r = brute_orientation(g, criterion, soft(budget));
        } else if (args.search == "pruned") {
            r = search_orientation(g, criterion, soft(budget));
        } else {
            throw InputError("unknown search " + args.search);
        }
        out.code = status_code(r.status);
        out.doc = json{{"exists", status_json(r.status)}, {"status", to_string(r.status)}, {"visited", r.visited}};
        if (r.witness) {
            out.doc["orientation"] = to_json(*r.witness);
        }
        return out;
    }
    if (args.search != "enumerate") {
        throw InputError("--search only applies to --graph");
    }
    Criterion criterion = parse_criterion(args.exists);
    if (criterion == Criterion::po) {
        throw InputError("every instance has a PO allocation; --exists po is not a question");
    }
    Instance inst = load_instance(args.instance);
    auto r = brute_exists_allocation(inst, make_predicate(inst, criterion), soft(budget));
    out.code = status_code(r.status);
    out.doc = json{{"exists", status_json(r.status)}, {"status", to_string(r.status)}, {"visited", r.visited}};
    if (r.witness) {
        out.doc["allocation"] = to_json(*r.witness);
    }
    return out;
}

Outcome run_export_dot(const DotArgs& args) {
    Multigraph g = load_graph(args.graph);
    std::optional<Orientation> pi;
    if (!args.orientation.empty()) {
        pi = orientation_from_json(read_json_file(args.orientation));
    }
    DotOptions options;
    if (args.style == "paper") {
        options.weight_classes = true;
    } else if (args.style != "plain") {
        throw InputError("unknown style " + args.style);
    }
    std::string text = export_dot(g, pi, options);
    Outcome out;
    if (args.output.empty()) {
        out.doc = json{{"dot", text}};
    } else {
        write_text(args.output, text);
        out.doc = json{{"written", args.output}};
    }
    return out;
}

}  // namespace fairdiv::cli
