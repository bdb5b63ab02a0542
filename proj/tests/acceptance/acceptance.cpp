// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit when any fails.
// Pass a criterion number to run only that one.

#include "generators.hpp"

#include <fairdiv/allocators.hpp>
#include <fairdiv/chores_orient.hpp>
#include <fairdiv/efx_multigraph.hpp>
#include <fairdiv/fairness.hpp>
#include <fairdiv/gadgets.hpp>
#include <fairdiv/mms_solver.hpp>
#include <fairdiv/oracle.hpp>
#include <fairdiv/two_sat.hpp>

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

int g_failures = 0;

#define EXPECT(cond, msg)                                     \
    do {                                                      \
        if (!(cond)) {                                        \
            std::ostringstream os_;                           \
            os_ << msg;                                       \
            std::fprintf(stderr, "  FAIL: %s\n", os_.str().c_str()); \
            ++g_failures;                                     \
            if (g_failures > 50) {                            \
                return;                                       \
            }                                                 \
        }                                                     \
    } while (0)

std::vector<std::vector<std::string>> sorted_bundles(const Allocation& a) {
    auto out = a.bundles;
    for (auto& b : out) {
        std::sort(b.begin(), b.end());
    }
    return out;
}

bool holds(const Instance& inst, const Allocation& a, Criterion c) { return check(inst, a, c).holds; }

long to_long(const Rational& r) { return r.get_num().get_si(); }

// Maximin share by assigning items to bundles in first-use order (integer utilities only).
long brute_threshold(const Instance& inst, int agent) {
    const int n = inst.agents;
    const int m = inst.item_count();
    std::vector<long> v(m);
    for (int j = 0; j < m; ++j) {
        v[j] = to_long(inst.utilities[agent][j]);
    }
    std::vector<long> sums(n, 0);
    long best = LONG_MIN;
    std::function<void(int, int)> rec = [&](int k, int used) {
        if (k == m) {
            best = std::max(best, *std::min_element(sums.begin(), sums.end()));
            return;
        }
        for (int b = 0; b <= std::min(used, n - 1); ++b) {
            sums[b] += v[k];
            rec(k + 1, std::max(used, b + 1));
            sums[b] -= v[k];
        }
    };
    rec(0, 0);
    return best;
}

long bundle_sum(const Instance& inst, int agent, const std::vector<std::string>& bundle) {
    return to_long(bundle_utility(inst, agent, bundle));
}

Multigraph graph_from(int n, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::pair<long, long>>& weights) {
    Multigraph g;
    g.vertices = n;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        g.edges.push_back(make_edge(static_cast<int>(k), edges[k].first, edges[k].second, weights[k].first,
                                    weights[k].second));
    }
    return g;
}

// --- 1 ---------------------------------------------------------------------------------

void criterion_mms_example() {
    Instance inst = make_instance(std::vector<std::vector<long>>{
        {1, 2, 3, 4, 5, 6}, {1, 10, 6, 0, 0, 0}, {10, 1, 1, 1, 1, 1}});
    MmsProfile profile = mms_profile(inst);
    const long expected[] = {7, 1, 2};
    for (int i = 0; i < 3; ++i) {
        EXPECT(profile.thresholds[i] == Value(Rational(expected[i])),
               "threshold of agent " << i << " is " << format_value(profile.thresholds[i]));
        EXPECT(brute_threshold(inst, i) == expected[i], "oracle threshold of agent " << i);
    }
    MmsSolution sol = solve_mms(inst);
    EXPECT(sol.verdict == MmsVerdict::found, "verdict " << to_string(sol.verdict));
    EXPECT(sol.allocation && check_mms(inst, *sol.allocation).holds, "solve_mms allocation fails check_mms");
}

// --- 2 ---------------------------------------------------------------------------------

void criterion_round_robin() {
    Instance inst = make_instance(std::vector<std::vector<long>>{{1, 2, 0, 5}, {2, 1, 0, 2}, {1, 1, 1, 0}});
    Allocation a = round_robin(inst, {0, 1, 2});
    std::vector<std::vector<std::string>> expected{{"o3", "o4"}, {"o1"}, {"o2"}};
    EXPECT(sorted_bundles(a) == expected, "round robin bundles differ");
    EXPECT(holds(inst, a, Criterion::ef1), "round robin output is not EF1");
}

// --- 3 ---------------------------------------------------------------------------------

void criterion_mixed_round_robin() {
    Instance inst = make_instance(std::vector<std::vector<long>>{{2, -3, -3, -3}, {2, -3, -3, -3}});
    Allocation rr = round_robin(inst, {0, 1}, RoundRobinOptions{.allow_mixed = true});
    EXPECT(!holds(inst, rr, Criterion::ef1), "round robin output unexpectedly EF1");
    Allocation drr = double_round_robin(inst);
    EXPECT(holds(inst, drr, Criterion::ef1), "double round robin output is not EF1");
}

// --- 4 ---------------------------------------------------------------------------------

void criterion_k4_c4() {
    std::vector<std::pair<int, int>> k4{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
    std::vector<std::pair<int, int>> c4{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    Multigraph gk = graph_from(4, k4, std::vector<std::pair<long, long>>(6, {-1, -1}));
    Multigraph gc = graph_from(4, c4, std::vector<std::pair<long, long>>(4, {-1, -1}));
    EXPECT(!ef1_orient_graph(gk).has_value(), "K4 got an orientation");
    auto pi = ef1_orient_graph(gc);
    EXPECT(pi.has_value(), "C4 got no orientation");
    if (pi) {
        EXPECT(holds(graphical_to_instance(gc), orientation_to_allocation(gc, *pi), Criterion::ef1),
               "C4 orientation is not EF1");
    }
}

// --- 5 ---------------------------------------------------------------------------------

struct ChoresTally {
    long graphs = 0;
    long efx_yes = 0;
    long ef1_yes = 0;
};

void differential_chores(const Multigraph& g, ChoresTally& tally) {
    ++tally.graphs;
    const Instance inst = graphical_to_instance(g);
    auto truth_efx = brute_orientation(g, Criterion::efx0);
    auto got_efx = efx_orient_chores(g);
    EXPECT((truth_efx.status == SearchStatus::found) == got_efx.has_value(),
           "EFX0 decision differs on graph with " << g.edges.size() << " edges");
    if (got_efx) {
        ++tally.efx_yes;
        EXPECT(holds(inst, orientation_to_allocation(g, *got_efx), Criterion::efx0), "EFX0 output fails check");
    }
    auto truth_ef1 = brute_orientation(g, Criterion::ef1);
    auto got_ef1 = ef1_orient_graph(g);
    EXPECT((truth_ef1.status == SearchStatus::found) == got_ef1.has_value(),
           "EF1 decision differs on graph with " << g.edges.size() << " edges");
    if (got_ef1) {
        ++tally.ef1_yes;
        EXPECT(holds(inst, orientation_to_allocation(g, *got_ef1), Criterion::ef1), "EF1 output fails check");
    }
}

void criterion_chores_differential() {
    const std::vector<std::pair<long, long>> kinds{{-1, -1}, {0, -1}, {-1, 0}, {0, 0}, {-2, -1},
                                                   {-1, -2}, {-2, -2}, {0, -2}, {-2, 0}};
    Rng rng(5);
    ChoresTally tally;
    long classes = 0;
    for (int n = 1; n <= 6; ++n) {
        for (const auto& edges : connected_graphs(n, 9)) {
            ++classes;
            const int e = static_cast<int>(edges.size());
            std::vector<std::pair<long, long>> w(e);
            if (e <= 3) {
                long total = 1;
                for (int k = 0; k < e; ++k) {
                    total *= static_cast<long>(kinds.size());
                }
                for (long code = 0; code < total; ++code) {
                    long c = code;
                    for (int k = 0; k < e; ++k) {
                        w[k] = kinds[c % kinds.size()];
                        c /= static_cast<long>(kinds.size());
                    }
                    differential_chores(graph_from(n, edges, w), tally);
                }
                continue;
            }
            std::fill(w.begin(), w.end(), std::pair<long, long>{-1, -1});
            differential_chores(graph_from(n, edges, w), tally);
            for (int rep = 0; rep < 200; ++rep) {
                // Half the patterns stay objective (each edge zero or negative to both ends).
                bool objective = rep % 2 == 0;
                for (auto& x : w) {
                    if (objective) {
                        long v = coin(rng, 0.3) ? 0 : -uniform(rng, 1, 2);
                        x = {v, v == 0 ? 0 : -uniform(rng, 1, 2)};
                    } else {
                        x = kinds[uniform(rng, 0, static_cast<long>(kinds.size()) - 1)];
                    }
                }
                differential_chores(graph_from(n, edges, w), tally);
            }
        }
    }
    for (int t = 0; t < 1000; ++t) {
        differential_chores(random_chores_graph(rng, 8, 12, {0, -1, -2}), tally);
    }
    std::printf("  %ld isomorphism classes, %ld graphs, EFX0 orientable %ld, EF1 orientable %ld\n", classes,
                tally.graphs, tally.efx_yes, tally.ef1_yes);
}

// --- 6 ---------------------------------------------------------------------------------

void criterion_mms_reductions() {
    Rng rng(6);
    long steps = 0;
    for (int t = 0; t < 500; ++t) {
        int mode = static_cast<int>(uniform(rng, 0, 2));
        int n = mode == 0 ? static_cast<int>(uniform(rng, 1, 3)) : 4;
        int m = static_cast<int>(uniform(rng, 1, n + 5));
        Instance inst = random_instance(rng, n, m, -5, 5);
        if (mode == 1) {
            int i = static_cast<int>(uniform(rng, 0, n - 1));
            for (auto& u : inst.utilities[i]) {
                u = abs(u);
            }
        } else if (mode == 2) {
            for (auto& row : inst.utilities) {
                for (auto& u : row) {
                    u = -abs(u);
                }
            }
        }
        MmsSolution sol = solve_mms(inst);
        EXPECT(sol.verdict == MmsVerdict::found, "trial " << t << ": verdict " << to_string(sol.verdict));
        if (!sol.allocation) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            EXPECT(bundle_sum(inst, i, sol.allocation->bundles[i]) >= brute_threshold(inst, i),
                   "trial " << t << ": agent " << i << " below threshold");
        }
        for (const ReductionStep& step : sol.trail) {
            ++steps;
            const Instance& stage = step.stage;
            for (const auto& [agent, bundle] : step.granted) {
                EXPECT(bundle_sum(stage, agent, bundle) >= brute_threshold(stage, agent),
                       "trial " << t << ": rule " << step.rule << " leaves a removed agent short");
            }
            Instance reduced = apply_reduction(stage, step);
            int k = 0;
            for (int i = 0; i < stage.agents; ++i) {
                if (std::find(step.removed_agents.begin(), step.removed_agents.end(), i) !=
                    step.removed_agents.end()) {
                    continue;
                }
                EXPECT(brute_threshold(reduced, k) >= brute_threshold(stage, i),
                       "trial " << t << ": rule " << step.rule << " lowers the threshold of agent " << i);
                ++k;
            }
        }
    }
    std::printf("  %ld reduction steps checked\n", steps);
}

// --- 7 ---------------------------------------------------------------------------------

void criterion_bivalued() {
    Rng rng(7);
    int done = 0;
    long rejected = 0;
    while (done < 300) {
        BiValuedGraph bg = random_bivalued(rng, 7, 12, 3);
        auto comps = classify_components(bg);
        if (std::any_of(comps.begin(), comps.end(), [](const HeavyComponent& c) { return c.ntom; })) {
            ++rejected;
            continue;
        }
        ++done;
        BivaluedResult r = efx_orient_bivalued(bg);
        EXPECT(r.verdict == BivaluedVerdict::oriented && r.orientation, "graph " << done << " not oriented");
        if (r.orientation) {
            EXPECT(holds(graphical_to_instance(bg.g), orientation_to_allocation(bg.g, *r.orientation),
                         Criterion::efx0),
                   "graph " << done << " orientation fails EFX0");
        }
    }
    for (int q = 1; q <= 3; ++q) {
        BiValuedGraph pair = ntom_pair_graph(q, Rational(q + 1), Rational(1));
        EXPECT(brute_orientation(pair.g, Criterion::efx0).status == SearchStatus::none,
               "q = " << q << ": oracle found an orientation");
        EXPECT(efx_orient_bivalued(pair).verdict == BivaluedVerdict::ntom_blocked, "q = " << q << ": not blocked");
    }
    std::printf("  300 graphs oriented, %ld samples with an NTOM component redrawn\n", rejected);
}

// --- 8 ---------------------------------------------------------------------------------

// Circuits with gates listed leaves first, every gate but the last read by a later one, the
// last gate as output, OR arguments in non-decreasing order and at most three INPUT gates.
std::vector<Circuit> enumerate_circuits(int max_gates, int max_inputs) {
    std::vector<Circuit> out;
    std::vector<Gate> gates;
    std::function<void(int, bool)> grow = [&](int inputs, bool leaves_done) {
        if (!gates.empty()) {
            std::vector<int> reads(gates.size(), 0);
            for (const Gate& g : gates) {
                for (const auto& a : g.inputs) {
                    ++reads[std::stoi(a.substr(1))];
                }
            }
            bool all_read = true;
            for (std::size_t k = 0; k + 1 < gates.size(); ++k) {
                all_read = all_read && reads[k] > 0;
            }
            if (all_read) {
                out.push_back(Circuit{gates, gates.back().id});
            }
        }
        if (static_cast<int>(gates.size()) == max_gates) {
            return;
        }
        const int k = static_cast<int>(gates.size());
        const std::string id = "g" + std::to_string(k);
        auto ref = [](int j) { return "g" + std::to_string(j); };
        if (!leaves_done) {
            if (inputs < max_inputs) {
                gates.push_back(Gate{id, GateKind::input, {}});
                grow(inputs + 1, false);
                gates.pop_back();
            }
            gates.push_back(Gate{id, GateKind::true_const, {}});
            grow(inputs, false);
            gates.pop_back();
        }
        for (int a = 0; a < k; ++a) {
            gates.push_back(Gate{id, GateKind::not_gate, {ref(a)}});
            grow(inputs, true);
            gates.pop_back();
            for (int b = a; b < k; ++b) {
                gates.push_back(Gate{id, GateKind::or_gate, {ref(a), ref(b)}});
                grow(inputs, true);
                gates.pop_back();
            }
        }
    };
    grow(0, false);
    return out;
}

void criterion_gadgets() {
    const SearchBudget cap{std::uint64_t{1} << 20, OnExceed::unknown};
    long circuits = 0;
    long sat = 0;
    long skipped = 0;
    std::uint64_t most = 0;
    for (const Circuit& c : enumerate_circuits(5, 3)) {
        ++circuits;
        bool is_sat = brute_circuit_sat(c).has_value();
        sat += is_sat;
        CircuitGadget gadget = build_circuit_gadget(c, 2, Rational(5), Rational(1));
        auto r = search_orientation(gadget.bg.g, Criterion::efx0, cap);
        most = std::max(most, r.visited);
        if (r.status == SearchStatus::unknown) {
            ++skipped;
            std::printf("  skipped (cap): %s\n", format_circuit(c).c_str());
            continue;
        }
        EXPECT(is_sat == (r.status == SearchStatus::found), "biconditional fails for\n" << format_circuit(c));
        if (r.witness) {
            EXPECT(orientation_is_efx0(gadget.bg.g, receivers_of(gadget.bg.g, *r.witness)),
                   "witness orientation fails EFX0");
        }
    }
    std::printf("  %ld circuits (%ld satisfiable), %ld skipped, most placements %llu\n", circuits, sat, skipped,
                static_cast<unsigned long long>(most));

    long sets = 0;
    long splittable = 0;
    std::vector<long> s;
    std::function<void(long, long)> grow = [&](long max_part, long room) {
        if (!s.empty()) {
            ++sets;
            bool split = brute_equipartition(s).has_value();
            splittable += split;
            Multigraph loop = build_partition_selfloop_gadget(s, PartitionCriterion::ef1);
            Multigraph tri = build_partition_triangle_gadget(s);
            auto a = brute_orientation(loop, Criterion::ef1, cap);
            auto b = brute_orientation(tri, Criterion::ef1, cap);
            EXPECT(a.status != SearchStatus::unknown && b.status != SearchStatus::unknown, "partition search capped");
            EXPECT(split == (a.status == SearchStatus::found), "self-loop variant differs on a set of size " << s.size());
            EXPECT(split == (b.status == SearchStatus::found), "triangle variant differs on a set of size " << s.size());
        }
        for (long x = std::min(max_part, room); x >= 1; --x) {
            s.push_back(x);
            grow(x, room - x);
            s.pop_back();
        }
    };
    grow(16, 16);
    std::printf("  %ld multisets with sum <= 16 (%ld splittable)\n", sets, splittable);
}

// --- 9 ---------------------------------------------------------------------------------

void criterion_two_sat() {
    Rng rng(9);
    long satisfiable = 0;
    for (int t = 0; t < 2000; ++t) {
        TwoSatFormula f = random_formula(rng, 10, 15);
        auto truth = brute_2sat(f);
        auto got = solve_2sat(f);
        EXPECT(truth.has_value() == got.has_value(), "trial " << t << ": decision differs");
        if (got) {
            ++satisfiable;
            EXPECT(satisfies(f, *got), "trial " << t << ": assignment does not satisfy");
        }
    }
    std::printf("  %ld of 2000 satisfiable\n", satisfiable);
}

// --- 10 --------------------------------------------------------------------------------

void criterion_implications() {
    Rng rng(10);
    for (int t = 0; t < 1000; ++t) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        int m = static_cast<int>(uniform(rng, 1, 7));
        Instance inst = random_instance(rng, n, m, -5, 5);
        Allocation a = allocation_from_owners(inst, random_owners(rng, n, m));
        bool ef = holds(inst, a, Criterion::ef);
        bool prop = holds(inst, a, Criterion::prop);
        bool ef1 = holds(inst, a, Criterion::ef1);
        EXPECT(!holds(inst, a, Criterion::efx0) || ef1, "trial " << t << ": EFX0 without EF1");
        EXPECT(!ef || prop, "trial " << t << ": EF without PROP");
        if (n == 2) {
            EXPECT(!prop || ef, "trial " << t << ": two agents, PROP without EF");
        }

        Instance padded = inst;
        padded.items.push_back("dummy");
        for (auto& row : padded.utilities) {
            row.push_back(Rational(0));
        }
        Allocation b = a;
        b.bundles[uniform(rng, 0, n - 1)].push_back("dummy");
        EXPECT(holds(padded, b, Criterion::ef1) == ef1, "trial " << t << ": a dummy item changes EF1");

        for (int i = 0; i < n; ++i) {
            Rational total;
            for (const auto& u : inst.utilities[i]) {
                total += u;
            }
            Value mms = mms_threshold(inst, i).threshold;
            EXPECT(mms.amount * n <= total, "trial " << t << ": threshold above proportional share");
            EXPECT(mms.amount == Rational(brute_threshold(inst, i)), "trial " << t << ": threshold differs from oracle");
        }
    }
}

struct Criterion_ {
    int number;
    const char* name;
    double limit_seconds;
    void (*run)();
};

}  // namespace

int main(int argc, char** argv) {
    const Criterion_ all[] = {
        {1, "MMS thresholds and allocation of the 3x6 example", 1, criterion_mms_example},
        {2, "round robin on the 3x4 example", 1, criterion_round_robin},
        {3, "round robin fails EF1 on a mixed instance, double round robin passes", 1, criterion_mixed_round_robin},
        {4, "EF1 orientations of K4 and C4 chores graphs", 1, criterion_k4_c4},
        {5, "chores orientation deciders against enumeration", 300, criterion_chores_differential},
        {6, "MMS solver verdicts and reduction trails", 600, criterion_mms_reductions},
        {7, "EFX0 orientations of bi-valued graphs", 300, criterion_bivalued},
        {8, "circuit and partition gadget biconditionals", 600, criterion_gadgets},
        {9, "2SAT solver against truth tables", 60, criterion_two_sat},
        {10, "fairness implications", 60, criterion_implications},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failed = 0;
    for (const auto& c : all) {
        if (only != 0 && c.number != only) {
            continue;
        }
        g_failures = 0;
        auto start = std::chrono::steady_clock::now();
        bool threw = false;
        try {
            c.run();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  exception: %s\n", e.what());
            threw = true;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = !threw && g_failures == 0 && secs < c.limit_seconds;
        failed += !pass;
        std::printf("criterion %d: %s  %s (%.2f s, limit %.0f s)\n", c.number, pass ? "PASS" : "FAIL", c.name, secs,
                    c.limit_seconds);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
