#include "generators.hpp"

#include <fairdiv/errors.hpp>
#include <fairdiv/fairness.hpp>

#include <gtest/gtest.h>

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

Instance rows(const std::vector<std::vector<long>>& u) { return make_instance(u); }

bool holds(const Instance& inst, const Allocation& a, Criterion c) { return check(inst, a, c).holds; }

}  // namespace

TEST(Criterion, NamesRoundTrip) {
    for (Criterion c : {Criterion::ef, Criterion::prop, Criterion::ef1, Criterion::efx0, Criterion::efx_minus,
                        Criterion::mms, Criterion::po}) {
        EXPECT_EQ(parse_criterion(to_string(c)), c);
    }
    EXPECT_EQ(parse_criterion("efx-"), Criterion::efx_minus);
    EXPECT_THROW(parse_criterion("efx2"), InputError);
}

TEST(Check, ProportionalButNotEnvyFree) {
    Instance inst = rows({{1, 2, 0}, {0, 1, 2}, {2, 0, 1}});
    Allocation diag{{{"o1"}, {"o2"}, {"o3"}}};
    EXPECT_TRUE(holds(inst, diag, Criterion::prop));
    FairnessReport ef = check(inst, diag, Criterion::ef);
    EXPECT_FALSE(ef.holds);
    ASSERT_TRUE(ef.witness);
    EXPECT_TRUE(ef.witness->envier.has_value());
    EXPECT_TRUE(holds(inst, diag, Criterion::ef1));
}

TEST(Check, EnvyFreeUpToOneButNotAny) {
    Instance inst = rows({{3, 2, 1}, {3, 2, 1}});
    Allocation a{{{"o2"}, {"o1", "o3"}}};
    EXPECT_TRUE(holds(inst, a, Criterion::ef1));
    FairnessReport efx = check(inst, a, Criterion::efx0);
    EXPECT_FALSE(efx.holds);
    ASSERT_TRUE(efx.witness);
    EXPECT_EQ(efx.witness->envier, 0);
    EXPECT_EQ(efx.witness->envied, 1);
    EXPECT_EQ(efx.witness->item, "o3");
}

TEST(Check, ChoresRemoveFromOwnBundle) {
    Instance inst = rows({{-1, -1, -1}, {-1, -1, -1}});
    Allocation two_one{{{"o1", "o2"}, {"o3"}}};
    EXPECT_TRUE(holds(inst, two_one, Criterion::ef1));
    EXPECT_TRUE(holds(inst, two_one, Criterion::efx0));
    Allocation three_none{{{"o1", "o2", "o3"}, {}}};
    EXPECT_FALSE(holds(inst, three_none, Criterion::ef1));
}

TEST(Check, ZeroValuedGoodsSeparateEfxVariants) {
    // Agent 0 envies agent 1; dropping the worthless o1 does not help, dropping o3 does.
    Instance inst = rows({{0, 5, 6}, {0, 5, 6}});
    Allocation a{{{"o2"}, {"o1", "o3"}}};
    EXPECT_TRUE(holds(inst, a, Criterion::efx_minus));
    FairnessReport r = check(inst, a, Criterion::efx0);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->item, "o1");
}

TEST(Check, PartialAllocationsOnlyForEfx) {
    Instance inst = rows({{1, 1}, {1, 1}});
    Allocation partial{{{"o1"}, {}}, true};
    CheckOptions opts;
    opts.allow_partial = true;
    FairnessReport r = check(inst, partial, Criterion::efx0, opts);
    EXPECT_TRUE(r.partial);
    EXPECT_TRUE(r.holds);
    EXPECT_THROW(check(inst, partial, Criterion::ef1, opts), Error);
}

TEST(Check, MixedEfxIsFlaggedAsExtension) {
    Instance inst = rows({{2, -1}, {2, -1}});
    Allocation a{{{"o1"}, {"o2"}}};
    FairnessReport r = check(inst, a, Criterion::efx0);
    EXPECT_TRUE(r.extension);
}

TEST(Mms, ThresholdsOfTheThreeBySixInstance) {
    Instance inst = rows({{1, 2, 3, 4, 5, 6}, {1, 10, 6, 0, 0, 0}, {10, 1, 1, 1, 1, 1}});
    MmsProfile p = mms_profile(inst);
    EXPECT_EQ(p.thresholds[0], Value(Rational(7)));
    EXPECT_EQ(p.thresholds[1], Value(Rational(1)));
    EXPECT_EQ(p.thresholds[2], Value(Rational(2)));
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(p.witnesses[i].bundles.size(), 3u);
    }
    Allocation a{{{"o1", "o6"}, {"o2"}, {"o3", "o4", "o5"}}};
    EXPECT_TRUE(check_mms(inst, a).holds);
    Allocation bad{{{"o1"}, {"o2"}, {"o3", "o4", "o5", "o6"}}};
    FairnessReport r = check_mms(inst, bad);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->agent, 0);
}

TEST(Mms, NegativeThresholdsForChores) {
    Instance inst = rows({{-1, -1, -1}});
    EXPECT_EQ(mms_threshold(inst, 0).threshold, Value(Rational(-3)));
    Instance two = rows({{-2, -1, -1}, {-2, -1, -1}});
    EXPECT_EQ(mms_threshold(two, 0).threshold, Value(Rational(-2)));
}

TEST(Mms, GuardRejectsLargeInstances) {
    EXPECT_TRUE(mms_within_guard(4, 17));
    EXPECT_FALSE(mms_within_guard(4, 18));
    Rng rng(1);
    Instance big = random_instance(rng, 4, 18, 0, 3);
    EXPECT_THROW(mms_threshold(big, 0), SizeGuardError);
}

TEST(Po, DominatedAllocationIsCaught) {
    Instance inst = rows({{1, 0}, {0, 1}});
    Allocation swapped{{{"o2"}, {"o1"}}};
    FairnessReport r = check_po(inst, swapped);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.witness && r.witness->dominating);
    Allocation best{{{"o1"}, {"o2"}}};
    EXPECT_TRUE(check_po(inst, best).holds);
}

TEST(Po, BudgetGuard) {
    Rng rng(2);
    Instance inst = random_instance(rng, 3, 12, 0, 3);
    Allocation a = allocation_from_owners(inst, random_owners(rng, 3, 12));
    EXPECT_THROW(check_po(inst, a, SearchBudget{1000, OnExceed::error}), SizeGuardError);
}

TEST(Pef, OnlyEdgesBetweenThePairCount) {
    Multigraph g;
    g.vertices = 3;
    g.edges.push_back(Edge{"a", 0, 1, Rational(1), Rational(1)});
    g.edges.push_back(Edge{"b", 0, 1, Rational(1), Rational(1)});
    g.edges.push_back(Edge{"c", 1, 2, Rational(5), Rational(5)});
    Orientation both_to_1{{{"a", 1}, {"b", 1}, {"c", 1}}};
    EXPECT_FALSE(check_pef(g, both_to_1, 0, 1));
    Orientation split{{{"a", 0}, {"b", 1}, {"c", 1}}};
    EXPECT_TRUE(check_pef(g, split, 0, 1));
}

TEST(Predicate, AgreesWithCheckOnRandomInstances) {
    Rng rng(3);
    const Criterion criteria[] = {Criterion::ef, Criterion::prop, Criterion::ef1, Criterion::efx0,
                                  Criterion::efx_minus};
    for (int t = 0; t < 400; ++t) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        int m = static_cast<int>(uniform(rng, 1, 6));
        Instance inst = random_instance(rng, n, m, -4, 4);
        Owners owners = random_owners(rng, n, m);
        Allocation a = allocation_from_owners(inst, owners);
        for (Criterion c : criteria) {
            EXPECT_EQ(make_predicate(inst, c)(owners), holds(inst, a, c)) << "trial " << t << " " << to_string(c);
        }
    }
}

TEST(Predicate, GraphCheckersAgreeWithInstanceChecks) {
    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
        Multigraph g = coin(rng) ? random_chores_graph(rng, 5, 8, {0, -1, -2, -3})
                                 : random_bivalued(rng, 5, 8, 2).g;
        Receivers recv(g.edges.size());
        for (std::size_t k = 0; k < g.edges.size(); ++k) {
            recv[k] = coin(rng) ? g.edges[k].a : g.edges[k].b;
        }
        Instance inst = graphical_to_instance(g);
        Allocation a = orientation_to_allocation(g, orientation_from_receivers(g, recv));
        EXPECT_EQ(orientation_is_efx0(g, recv), holds(inst, a, Criterion::efx0)) << "trial " << t;
        EXPECT_EQ(orientation_is_ef1(g, recv), holds(inst, a, Criterion::ef1)) << "trial " << t;
    }
}
