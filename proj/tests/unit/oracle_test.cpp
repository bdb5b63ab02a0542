#include "generators.hpp"

#include <fairdiv/errors.hpp>
#include <fairdiv/oracle.hpp>

#include <gtest/gtest.h>

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

Multigraph path(int edges) {
    Multigraph g;
    g.vertices = edges + 1;
    for (int k = 0; k < edges; ++k) {
        g.edges.push_back(make_edge(k, k, k + 1, -1, -1));
    }
    return g;
}

// Goods multigraph with parallel edges, loops and arbitrary (not bi-valued) weights.
Multigraph random_goods_multigraph(Rng& rng, int max_vertices, int max_edges) {
    Multigraph g;
    g.vertices = static_cast<int>(uniform(rng, 1, max_vertices));
    int m = static_cast<int>(uniform(rng, 0, max_edges));
    for (int k = 0; k < m; ++k) {
        int a = static_cast<int>(uniform(rng, 0, g.vertices - 1));
        int b = coin(rng, 0.2) ? a : static_cast<int>(uniform(rng, 0, g.vertices - 1));
        long wa = uniform(rng, 0, 4);
        long wb = a == b ? wa : uniform(rng, 0, 4);
        g.edges.push_back(make_edge(k, a, b, wa, wb));
    }
    return g;
}

}  // namespace

TEST(Enumerate, LexicographicOrder) {
    Multigraph g = path(2);
    g.edges.push_back(Edge{"loop", 1, 1, Rational(-1), Rational(-1)});
    std::vector<Receivers> seen;
    auto r = enumerate_orientations(g, [&](const Receivers& recv) {
        seen.push_back(recv);
        return false;
    });
    EXPECT_EQ(r.status, SearchStatus::none);
    EXPECT_EQ(r.visited, 4u);
    ASSERT_EQ(seen.size(), 4u);
    EXPECT_EQ(seen[0], (Receivers{0, 1, 1}));
    EXPECT_EQ(seen[1], (Receivers{0, 2, 1}));
    EXPECT_EQ(seen[2], (Receivers{1, 1, 1}));
    EXPECT_EQ(seen[3], (Receivers{1, 2, 1}));
    EXPECT_EQ(orientation_count(g), 4u);
}

TEST(Enumerate, BudgetHandling) {
    Multigraph g = path(12);
    SearchBudget small{100, OnExceed::error};
    EXPECT_THROW(enumerate_orientations(g, [](const Receivers&) { return false; }, small), BudgetExceeded);
    small.on_exceed = OnExceed::unknown;
    auto r = enumerate_orientations(g, [](const Receivers&) { return false; }, small);
    EXPECT_EQ(r.status, SearchStatus::unknown);
}

TEST(Enumerate, Allocations) {
    Instance inst = make_instance(std::vector<std::vector<long>>{{1, 1}, {1, 1}});
    auto r = brute_exists_allocation(inst, [](const Owners& o) { return o[0] != o[1]; });
    ASSERT_EQ(r.status, SearchStatus::found);
    EXPECT_EQ(r.witness->bundles, (std::vector<std::vector<std::string>>{{"o1"}, {"o2"}}));
    EXPECT_EQ(r.visited, 2u);
}

TEST(Brute, PathOfChores) {
    EXPECT_EQ(brute_orientation(path(3), Criterion::ef1).status, SearchStatus::found);
    EXPECT_EQ(brute_orientation(path(3), Criterion::efx0).status, SearchStatus::found);
}

TEST(Search, MatchesEnumerationOnChoresGraphs) {
    Rng rng(71);
    for (int t = 0; t < 600; ++t) {
        Multigraph g = random_chores_graph(rng, 6, 12, {0, -1, -2, -3});
        for (Criterion c : {Criterion::ef1, Criterion::efx0}) {
            auto truth = brute_orientation(g, c);
            auto got = search_orientation(g, c);
            ASSERT_EQ(truth.status, got.status) << "trial " << t << " " << to_string(c);
            if (got.witness) {
                Receivers recv = receivers_of(g, *got.witness);
                EXPECT_TRUE(c == Criterion::ef1 ? orientation_is_ef1(g, recv) : orientation_is_efx0(g, recv));
            }
        }
    }
}

TEST(Search, MatchesEnumerationOnGoodsMultigraphs) {
    Rng rng(72);
    for (int t = 0; t < 600; ++t) {
        Multigraph g = coin(rng) ? random_goods_multigraph(rng, 5, 12) : random_bivalued(rng, 6, 12, 3).g;
        for (Criterion c : {Criterion::ef1, Criterion::efx0}) {
            auto truth = brute_orientation(g, c);
            auto got = search_orientation(g, c);
            ASSERT_EQ(truth.status, got.status) << "trial " << t << " " << to_string(c);
        }
    }
}

TEST(Search, BudgetCountsPlacements) {
    Multigraph g = path(30);
    auto r = search_orientation(g, Criterion::ef1, SearchBudget{5, OnExceed::unknown});
    EXPECT_EQ(r.status, SearchStatus::unknown);
    EXPECT_THROW(search_orientation(g, Criterion::ef1, SearchBudget{5, OnExceed::error}), BudgetExceeded);
    EXPECT_EQ(search_orientation(g, Criterion::ef1).status, SearchStatus::found);
    EXPECT_THROW(search_orientation(g, Criterion::ef), PreconditionError);
}

TEST(Equipartition, FirstSubsetByMask) {
    auto e = brute_equipartition({3, 1, 1, 2, 2, 1});
    ASSERT_TRUE(e);
    EXPECT_EQ(e->first, (std::vector<long>{3, 1, 1}));
    EXPECT_EQ(e->second, (std::vector<long>{2, 2, 1}));
    EXPECT_FALSE(brute_equipartition({2, 3}));
    EXPECT_FALSE(brute_equipartition({1, 2, 4}));
    EXPECT_THROW(brute_equipartition(std::vector<long>(25, 1)), SizeGuardError);
}

TEST(CircuitOracle, Guard) {
    Circuit c;
    for (int k = 0; k < 21; ++k) {
        c.gates.push_back(Gate{"x" + std::to_string(k), GateKind::input, {}});
    }
    c.output = "x0";
    EXPECT_THROW(brute_circuit_sat(c), SizeGuardError);
}
