#include "generators.hpp"

#include <fairdiv/efx_multigraph.hpp>
#include <fairdiv/errors.hpp>
#include <fairdiv/fairness.hpp>
#include <fairdiv/gadgets.hpp>
#include <fairdiv/oracle.hpp>

#include <gtest/gtest.h>

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

BiValuedGraph graph(int n, long alpha, long beta, const std::vector<std::tuple<int, int, bool>>& edges) {
    BiValuedGraph bg;
    bg.alpha = Rational(alpha);
    bg.beta = Rational(beta);
    bg.g.vertices = n;
    for (const auto& [a, b, heavy] : edges) {
        const Rational& w = heavy ? bg.alpha : bg.beta;
        bg.g.edges.push_back(Edge{edge_name(static_cast<int>(bg.g.edges.size())), a, b, w, w});
    }
    return bg;
}

bool has_ntom(const BiValuedGraph& bg) {
    auto comps = classify_components(bg);
    return std::any_of(comps.begin(), comps.end(), [](const HeavyComponent& c) { return c.ntom; });
}

bool every_component_has_heavy_edges(const BiValuedGraph& bg) {
    std::vector<int> comp(bg.g.vertices);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) {
            x = comp[x];
        }
        return x;
    };
    for (const Edge& e : bg.g.edges) {
        comp[find(e.a)] = find(e.b);
    }
    std::vector<bool> heavy(bg.g.vertices, false);
    for (const Edge& e : bg.g.edges) {
        if (bg.heavy(e) && !e.is_loop()) {
            heavy[find(e.a)] = true;
        }
    }
    for (int v = 0; v < bg.g.vertices; ++v) {
        if (find(v) == v && !heavy[v]) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(Infer, ReadsTwoWeights) {
    Multigraph g;
    g.vertices = 2;
    g.edges.push_back(Edge{"h", 0, 1, Rational(3), Rational(3)});
    g.edges.push_back(Edge{"l", 0, 1, Rational(1, 2), Rational(1, 2)});
    BiValuedGraph bg = infer_bivalued(g);
    EXPECT_EQ(bg.alpha, Rational(3));
    EXPECT_EQ(bg.beta, Rational(1, 2));
    EXPECT_TRUE(bg.heavy(g.edges[0]));
    EXPECT_FALSE(bg.heavy(g.edges[1]));
    EXPECT_TRUE(validate_bivalued(bg).empty());
}

TEST(Infer, SingleWeightIsLight) {
    Multigraph g;
    g.vertices = 2;
    g.edges.push_back(Edge{"e", 0, 1, Rational(2), Rational(2)});
    BiValuedGraph bg = infer_bivalued(g);
    EXPECT_EQ(bg.beta, Rational(2));
    EXPECT_EQ(bg.alpha, Rational(3));
}

TEST(Infer, RejectsNonBivaluedGraphs) {
    Multigraph g;
    g.vertices = 2;
    g.edges.push_back(Edge{"e", 0, 1, Rational(2), Rational(1)});
    EXPECT_THROW(infer_bivalued(g), InputError);
    g.edges[0].wb = Rational(2);
    g.edges.push_back(Edge{"f", 0, 1, Rational(1), Rational(1)});
    g.edges.push_back(Edge{"h", 0, 1, Rational(3), Rational(3)});
    EXPECT_THROW(infer_bivalued(g), InputError);
    Multigraph neg;
    neg.vertices = 1;
    neg.edges.push_back(Edge{"e", 0, 0, Rational(-1), Rational(-1)});
    EXPECT_THROW(infer_bivalued(neg), InputError);
}

TEST(Components, Kinds) {
    // 0-1 doubled heavy, 2 alone, 3-4-5 heavy path, 6 alone with a heavy loop, 7-8-9 heavy triangle.
    BiValuedGraph bg = graph(10, 3, 1,
                             {{0, 1, true}, {0, 1, true}, {3, 4, true}, {4, 5, true}, {6, 6, true},
                              {7, 8, true}, {8, 9, true}, {9, 7, true}, {1, 2, false}});
    auto comps = classify_components(bg);
    ASSERT_EQ(comps.size(), 5u);
    EXPECT_EQ(comps[0].kind, ComponentKind::type1);
    ASSERT_TRUE(comps[0].pair);
    EXPECT_EQ(*comps[0].pair, std::make_pair(0, 1));
    EXPECT_EQ(comps[1].kind, ComponentKind::trivial);
    EXPECT_EQ(comps[2].kind, ComponentKind::ntom);
    EXPECT_TRUE(comps[2].ntom);
    EXPECT_EQ(comps[3].kind, ComponentKind::trivial);
    EXPECT_EQ(comps[4].kind, ComponentKind::type2);
    EXPECT_EQ(comps[4].vertices, (std::vector<int>{7, 8, 9}));
}

TEST(Components, Type2GivesEveryVertexOneHeavyEdge) {
    BiValuedGraph bg = graph(4, 3, 1, {{0, 1, true}, {1, 2, true}, {2, 0, true}, {2, 3, true}, {3, 0, false}});
    auto comps = classify_components(bg);
    ASSERT_EQ(comps[0].kind, ComponentKind::type2);
    Receivers r = orient_type2(bg, comps[0]);
    std::vector<int> heavy_in(4, 0);
    for (std::size_t k = 0; k < bg.g.edges.size(); ++k) {
        if (bg.heavy(bg.g.edges[k]) && r[k] >= 0) {
            ++heavy_in[r[k]];
        }
    }
    EXPECT_EQ(heavy_in, (std::vector<int>{1, 1, 1, 1}));
}

TEST(Components, Type1SplitsThePairEvenly) {
    BiValuedGraph bg = graph(3, 3, 1, {{0, 1, true}, {0, 1, true}, {0, 1, false}, {1, 2, true}});
    auto comps = classify_components(bg);
    ASSERT_EQ(comps[0].kind, ComponentKind::type1);
    Type1Orientation t = orient_type1(bg, comps[0]);
    EXPECT_NE(t.partial[0], t.partial[1]);
    EXPECT_GE(t.partial[0], 0);
    EXPECT_EQ(t.partial[3], 2);
}

TEST(TwoWaySplit, NoEnvyAfterDroppingAnyItem) {
    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
        std::vector<Rational> w(uniform(rng, 0, 9));
        for (auto& x : w) {
            x = Rational(uniform(rng, 0, 9));
        }
        TwoWaySplit s = two_agent_efx_split(w);
        EXPECT_EQ(s.first.size() + s.second.size(), w.size());
        auto sum = [&](const std::vector<int>& side) {
            Rational total;
            for (int k : side) {
                total += w[k];
            }
            return total;
        };
        auto min_of = [&](const std::vector<int>& side) {
            Rational m = side.empty() ? Rational(0) : w[side[0]];
            for (int k : side) {
                m = std::min(m, w[k]);
            }
            return m;
        };
        if (!s.second.empty()) {
            EXPECT_GE(sum(s.first), sum(s.second) - min_of(s.second)) << "trial " << t;
        }
        if (!s.first.empty()) {
            EXPECT_GE(sum(s.second), sum(s.first) - min_of(s.first)) << "trial " << t;
        }
    }
    EXPECT_THROW(two_agent_efx_split({Rational(-1)}), PreconditionError);
}

TEST(Orient, NtomPairsAreBlocked) {
    for (int q = 1; q <= 3; ++q) {
        BiValuedGraph bg = ntom_pair_graph(q, Rational(q + 1), Rational(1));
        BivaluedResult r = efx_orient_bivalued(bg);
        EXPECT_EQ(r.verdict, BivaluedVerdict::ntom_blocked);
        EXPECT_FALSE(r.orientation);
        EXPECT_EQ(brute_orientation(bg.g, Criterion::efx0).status, SearchStatus::none);
    }
}

TEST(Orient, LightMatchingOnK4) {
    // Doubled heavy pairs, so neither heavy component is an odd multitree.
    BiValuedGraph bg = graph(4, 1, 0,
                             {{0, 1, true}, {0, 1, true}, {2, 3, true}, {2, 3, true}, {0, 2, false}, {0, 3, false}, {1, 2, false}, {1, 3, false}});
    BivaluedResult r = efx_orient_bivalued(bg);
    ASSERT_EQ(r.verdict, BivaluedVerdict::oriented);
    EXPECT_TRUE(orientation_is_efx0(bg.g, receivers_of(bg.g, *r.orientation)));
}

TEST(Orient, AllLightGraphs) {
    Rng rng(32);
    for (int t = 0; t < 200; ++t) {
        BiValuedGraph bg = random_bivalued(rng, 6, 10, 3);
        for (auto& e : bg.g.edges) {
            e.wa = e.wb = bg.beta;
        }
        Receivers r = orient_trivial_case(bg);
        EXPECT_TRUE(orientation_is_efx0(bg.g, r)) << "trial " << t;
    }
}

TEST(Orient, MatchingConstructionOnHeavyComponents) {
    Rng rng(33);
    int tested = 0;
    for (int t = 0; t < 2000 && tested < 200; ++t) {
        BiValuedGraph bg = random_bivalued(rng, 6, 11, 3);
        if (has_ntom(bg) || !every_component_has_heavy_edges(bg)) {
            continue;
        }
        ++tested;
        MatchingPartial mp = orient_all_but_matching(bg);
        for (int k : mp.matching) {
            EXPECT_FALSE(bg.heavy(bg.g.edges[k]));
            EXPECT_EQ(mp.partial[k], -1);
        }
        Receivers full = finalize_matching(bg, mp.partial, mp.matching);
        EXPECT_TRUE(std::none_of(full.begin(), full.end(), [](int r) { return r < 0; }));
        EXPECT_TRUE(orientation_is_efx0(bg.g, full)) << "trial " << t;
    }
    EXPECT_GT(tested, 50);
}

TEST(Orient, AgreesWithOracleWhenNoNtom) {
    Rng rng(34);
    int tested = 0;
    while (tested < 300) {
        BiValuedGraph bg = random_bivalued(rng, 6, 10, 3);
        if (has_ntom(bg)) {
            continue;
        }
        ++tested;
        BivaluedResult r = efx_orient_bivalued(bg);
        ASSERT_EQ(r.verdict, BivaluedVerdict::oriented);
        EXPECT_FALSE(r.fallback) << "graph " << tested;
        EXPECT_TRUE(check(graphical_to_instance(bg.g), orientation_to_allocation(bg.g, *r.orientation),
                          Criterion::efx0)
                        .holds);
        EXPECT_EQ(brute_orientation(bg.g, Criterion::efx0).status, SearchStatus::found);
    }
}
