#include "generators.hpp"

#include <fairdiv/errors.hpp>
#include <fairdiv/fairness.hpp>
#include <fairdiv/gadgets.hpp>
#include <fairdiv/oracle.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Circuit circuit_file(const std::string& name) {
    return parse_circuit(read_file(std::string(FAIRDIV_DATA_DIR) + "/circuits/" + name + ".txt"));
}

bool orientable(const Multigraph& g, Criterion c) {
    return search_orientation(g, c).status == SearchStatus::found;
}

}  // namespace

TEST(Circuit, ParseAndFormatRoundTrip) {
    Circuit c = parse_circuit("# comment\nx = INPUT\n\nt = TRUE\nn = NOT x\no = OR n t\nOUTPUT o\n");
    ASSERT_EQ(c.gates.size(), 4u);
    EXPECT_EQ(c.gates[2].kind, GateKind::not_gate);
    EXPECT_EQ(c.gates[3].inputs, (std::vector<std::string>{"n", "t"}));
    EXPECT_EQ(c.output, "o");
    Circuit again = parse_circuit(format_circuit(c));
    EXPECT_EQ(format_circuit(again), format_circuit(c));
    EXPECT_EQ(circuit_input_count(c), 1);
}

TEST(Circuit, RejectsBadText) {
    EXPECT_THROW(parse_circuit("x = INPUT\ny = INPUT\na = AND x y\nOUTPUT a\n"), InputError);
    EXPECT_THROW(parse_circuit("x = NOT y\nOUTPUT x\n"), InputError);
    EXPECT_THROW(parse_circuit("x = INPUT\n"), InputError);
    EXPECT_THROW(parse_circuit("x = INPUT\nx = TRUE\nOUTPUT x\n"), InputError);
    EXPECT_THROW(parse_circuit("x = XOR\nOUTPUT x\n"), InputError);
}

TEST(Circuit, Evaluation) {
    Circuit c = circuit_file("and");
    EXPECT_EQ(circuit_input_count(c), 2);
    EXPECT_FALSE(evaluate_circuit(c, {true, false}).at("a"));
    EXPECT_TRUE(evaluate_circuit(c, {true, true}).at("a"));
    EXPECT_EQ(brute_circuit_sat(c), (std::vector<bool>{true, true}));
    EXPECT_FALSE(brute_circuit_sat(circuit_file("contradiction")));
    EXPECT_EQ(brute_circuit_sat(circuit_file("excluded_middle")), (std::vector<bool>{false}));
}

TEST(CircuitGadget, Preconditions) {
    Circuit c = circuit_file("true");
    EXPECT_THROW(build_circuit_gadget(c, 1, Rational(5), Rational(1)), PreconditionError);
    EXPECT_THROW(build_circuit_gadget(c, 2, Rational(2), Rational(1)), PreconditionError);
    EXPECT_THROW(build_circuit_gadget(c, 2, Rational(5), Rational(-1)), PreconditionError);
    EXPECT_NO_THROW(build_circuit_gadget(c, 2, Rational(5), Rational(1)));
}

TEST(CircuitGadget, ShapeAndColouring) {
    Circuit c = circuit_file("and");
    CircuitGadget gadget = build_circuit_gadget(c, 2, Rational(5), Rational(1));
    const Multigraph& g = gadget.bg.g;
    EXPECT_TRUE(validate_bivalued(gadget.bg).empty());
    EXPECT_TRUE(g.is_symmetric());
    ASSERT_EQ(static_cast<int>(gadget.black.size()), g.vertices);
    for (const Edge& e : g.edges) {
        if (!e.is_loop()) {
            EXPECT_NE(gadget.black[e.a], gadget.black[e.b]) << e.id;
        }
    }
    for (const auto& gate : c.gates) {
        ASSERT_TRUE(gadget.wire.count(gate.id)) << gate.id;
        EXPECT_TRUE(gadget.bg.heavy(g.edges[gadget.wire.at(gate.id)]));
    }
    ASSERT_GE(gadget.output_edge, 0);
    EXPECT_EQ(g.edges[gadget.output_edge].id, g.edges[gadget.wire.at("a")].id);
    for (const auto& comp : classify_components(gadget.bg)) {
        if (comp.kind != ComponentKind::trivial) {
            EXPECT_TRUE(comp.ntom);
        }
    }
}

TEST(CircuitGadget, SatisfiableExactlyWhenOrientable) {
    for (const char* name : {"true", "not_true", "excluded_middle", "contradiction", "and"}) {
        Circuit c = circuit_file(name);
        CircuitGadget gadget = build_circuit_gadget(c, 2, Rational(5), Rational(1));
        auto r = search_orientation(gadget.bg.g, Criterion::efx0);
        ASSERT_NE(r.status, SearchStatus::unknown) << name;
        EXPECT_EQ(brute_circuit_sat(c).has_value(), r.status == SearchStatus::found) << name;
    }
}

TEST(CircuitGadget, OrientationEncodesASatisfyingAssignment) {
    Circuit c = circuit_file("and");
    CircuitGadget gadget = build_circuit_gadget(c, 2, Rational(5), Rational(1));
    auto r = search_orientation(gadget.bg.g, Criterion::efx0);
    ASSERT_EQ(r.status, SearchStatus::found);
    std::vector<bool> inputs;
    for (const auto& gate : c.gates) {
        const Edge& e = gadget.bg.g.edges[gadget.wire.at(gate.id)];
        int receiver = r.witness->assign.at(e.id);
        bool value = gadget.black[receiver];
        if (gate.kind == GateKind::input) {
            inputs.push_back(value);
        }
    }
    EXPECT_TRUE(evaluate_circuit(c, inputs).at(c.output));
}

// With q = 2 and beta = 1 the gap alpha > q * beta is not enough: at alpha = 3 the constant
// gadget can leave its wire false, so an unsatisfiable circuit still orients.
TEST(CircuitGadget, NarrowGapBreaksTheConstantGadget) {
    Circuit c = circuit_file("not_true");
    ASSERT_FALSE(brute_circuit_sat(c));
    EXPECT_TRUE(orientable(build_circuit_gadget(c, 2, Rational(3), Rational(1)).bg.g, Criterion::efx0));
    EXPECT_FALSE(orientable(build_circuit_gadget(c, 2, Rational(4), Rational(1)).bg.g, Criterion::efx0));
    EXPECT_FALSE(orientable(build_circuit_gadget(c, 2, Rational(5), Rational(1)).bg.g, Criterion::efx0));
}

TEST(NtomPair, Shape) {
    BiValuedGraph bg = ntom_pair_graph(3, Rational(4), Rational(1));
    EXPECT_EQ(bg.g.vertices, 2);
    EXPECT_EQ(bg.g.edges.size(), 7u);
    auto comps = classify_components(bg);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].kind, ComponentKind::ntom);
}

TEST(Partition, GadgetShapes) {
    Multigraph loop = build_partition_selfloop_gadget({3, 1, 2}, PartitionCriterion::ef1);
    EXPECT_EQ(loop.vertices, 2);
    ASSERT_EQ(loop.edges.size(), 5u);
    EXPECT_EQ(loop.edges[0].wa, Rational(-3));
    EXPECT_EQ(loop.edge_index("la").has_value(), true);
    EXPECT_EQ(loop.edges[*loop.edge_index("la")].wa, Rational(-4));
    Multigraph zero = build_partition_selfloop_gadget({3, 1, 2}, PartitionCriterion::efx0);
    EXPECT_EQ(zero.edges[*zero.edge_index("lb")].wa, Rational(0));
    Multigraph tri = build_partition_triangle_gadget({3, 1, 2});
    EXPECT_EQ(tri.vertices, 3);
    ASSERT_EQ(tri.edges.size(), 7u);
    EXPECT_EQ(tri.edges[*tri.edge_index("ca1")].wa, Rational(-6));
}

TEST(Partition, EquipartitionExactlyWhenOrientable) {
    Rng rng(61);
    for (int t = 0; t < 300; ++t) {
        std::vector<long> s(uniform(rng, 1, 7));
        for (long& x : s) {
            x = uniform(rng, 1, 6);
        }
        bool split = brute_equipartition(s).has_value();
        Multigraph ef1_loop = build_partition_selfloop_gadget(s, PartitionCriterion::ef1);
        Multigraph efx_loop = build_partition_selfloop_gadget(s, PartitionCriterion::efx0);
        Multigraph tri = build_partition_triangle_gadget(s);
        EXPECT_EQ(split, brute_orientation(ef1_loop, Criterion::ef1).status == SearchStatus::found) << "trial " << t;
        EXPECT_EQ(split, brute_orientation(efx_loop, Criterion::efx0).status == SearchStatus::found) << "trial " << t;
        EXPECT_EQ(split, brute_orientation(tri, Criterion::ef1).status == SearchStatus::found) << "trial " << t;
    }
}
