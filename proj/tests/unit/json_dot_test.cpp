#include <fairdiv/dot.hpp>
#include <fairdiv/errors.hpp>
#include <fairdiv/json_io.hpp>

#include <gtest/gtest.h>

using namespace fairdiv;

TEST(Json, InstanceRoundTrip) {
    json j = json::parse(R"({"agents": 2, "items": ["a", "b"], "utilities": [[1, "-1/2"], ["3", "-inf"]]})");
    Instance inst = instance_from_json(j);
    EXPECT_EQ(inst.utilities[0][1], Rational(-1, 2));
    EXPECT_TRUE(inst.is_forbidden(1, 1));
    EXPECT_FALSE(inst.is_forbidden(0, 1));
    Instance again = instance_from_json(to_json(inst));
    EXPECT_EQ(again.items, inst.items);
    EXPECT_EQ(again.utilities, inst.utilities);
    EXPECT_EQ(again.forbidden, inst.forbidden);
}

TEST(Json, MalformedInputsThrow) {
    EXPECT_THROW(instance_from_json(json::parse(R"({"agents": 2, "items": ["a"], "utilities": [[1]]})")),
                 InputError);
    EXPECT_THROW(instance_from_json(json::parse(R"({"agents": 1, "items": ["a"], "utilities": [["x"]]})")),
                 InputError);
    EXPECT_THROW(multigraph_from_json(json::parse(R"({"vertices": 1, "edges": [{"id": "e", "a": 0, "b": 3,
                                                     "wa": "1", "wb": "1"}]})")),
                 InputError);
}

TEST(Json, GraphAllocationOrientation) {
    Multigraph g;
    g.vertices = 2;
    g.edges.push_back(Edge{"e1", 0, 1, Rational(1), Rational(2, 3)});
    Multigraph g2 = multigraph_from_json(to_json(g));
    ASSERT_EQ(g2.edges.size(), 1u);
    EXPECT_EQ(g2.edges[0].wb, Rational(2, 3));

    Allocation a{{{"o1"}, {}}, true};
    Allocation a2 = allocation_from_json(to_json(a));
    EXPECT_TRUE(a2.partial);
    EXPECT_EQ(a2.bundles, a.bundles);

    Orientation o{{{"e1", 1}}};
    EXPECT_EQ(orientation_from_json(to_json(o)).assign, o.assign);
    EXPECT_EQ(rational_to_json(Rational(-1, 2)), json("-1/2"));
    EXPECT_EQ(rational_from_json(json(4)), Rational(4));
}

TEST(Dot, UndirectedAndDirected) {
    Multigraph g;
    g.vertices = 2;
    g.edges.push_back(Edge{"h", 0, 1, Rational(3), Rational(3)});
    g.edges.push_back(Edge{"l", 0, 1, Rational(1), Rational(1)});
    EXPECT_EQ(export_dot(g), "graph {\n  0;\n  1;\n  0 -- 1 [label=\"h\"];\n  0 -- 1 [label=\"l\"];\n}\n");
    Orientation pi{{{"h", 0}}, true};
    std::string dot = export_dot(g, pi);
    EXPECT_NE(dot.find("digraph {"), std::string::npos);
    EXPECT_NE(dot.find("1 -> 0 [label=\"h\"]"), std::string::npos);
    EXPECT_NE(dot.find("0 -> 1 [label=\"l\", dir=none]"), std::string::npos);
}

TEST(Dot, StyledClasses) {
    Multigraph g;
    g.vertices = 2;
    g.edges.push_back(Edge{"h", 0, 1, Rational(3), Rational(3)});
    g.edges.push_back(Edge{"l", 0, 1, Rational(1), Rational(1)});
    std::string dot = export_dot(g, std::nullopt, DotOptions{true});
    EXPECT_NE(dot.find("[label=\"h\", style=solid, penwidth=2]"), std::string::npos);
    EXPECT_NE(dot.find("[label=\"l\", style=dashed]"), std::string::npos);

    Multigraph c;
    c.vertices = 2;
    c.edges.push_back(Edge{"d", 0, 1, Rational(0), Rational(0)});
    c.edges.push_back(Edge{"n", 0, 1, Rational(-1), Rational(-1)});
    std::string chores = export_dot(c, std::nullopt, DotOptions{true});
    EXPECT_NE(chores.find("[label=\"d\", style=dashed]"), std::string::npos);
    EXPECT_NE(chores.find("[label=\"n\", style=solid, penwidth=2]"), std::string::npos);
}

TEST(Dot, RejectsForeignOrientations) {
    Multigraph g;
    g.vertices = 3;
    g.edges.push_back(Edge{"e", 0, 1, Rational(1), Rational(1)});
    EXPECT_THROW(export_dot(g, Orientation{{{"x", 0}}}), InputError);
    EXPECT_THROW(export_dot(g, Orientation{{{"e", 2}}}), InputError);
}
