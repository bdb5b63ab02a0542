#include <fairdiv/chores_orient.hpp>
#include <fairdiv/efx_multigraph.hpp>
#include <fairdiv/mms_solver.hpp>
#include <fairdiv/oracle.hpp>
#include <fairdiv/two_sat.hpp>

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

using namespace fairdiv;

namespace {

Edge edge(int k, int a, int b, long wa, long wb) {
    return Edge{"e" + std::to_string(k + 1), a, b, Rational(wa), Rational(wb)};
}

// Simple chores graph: a cycle plus random chords, weights in {0, -1, -2}.
Multigraph chores_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vertex(0, n - 1);
    std::uniform_int_distribution<long> weight(-2, 0);
    Multigraph g;
    g.vertices = n;
    std::set<std::pair<int, int>> used;
    auto add = [&](int a, int b) {
        auto key = std::minmax(a, b);
        if (a != b && used.insert(key).second) {
            g.edges.push_back(edge(static_cast<int>(g.edges.size()), a, b, weight(rng), weight(rng)));
        }
    };
    for (int v = 0; v < n; ++v) {
        add(v, (v + 1) % n);
    }
    for (int k = 0; k < n; ++k) {
        add(vertex(rng), vertex(rng));
    }
    return g;
}

// Heavy path with doubled heavy edges and light chords, alpha 3, beta 1.
BiValuedGraph bivalued_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vertex(0, n - 1);
    BiValuedGraph bg;
    bg.alpha = Rational(3);
    bg.beta = Rational(1);
    bg.g.vertices = n;
    for (int v = 0; v + 1 < n; ++v) {
        for (int c = 0; c < 2; ++c) {
            bg.g.edges.push_back(edge(static_cast<int>(bg.g.edges.size()), v, v + 1, 3, 3));
        }
    }
    for (int k = 0; k < n; ++k) {
        bg.g.edges.push_back(edge(static_cast<int>(bg.g.edges.size()), vertex(rng), vertex(rng), 1, 1));
    }
    return bg;
}

void BM_Ef1OrientChores(benchmark::State& state) {
    Multigraph g = chores_graph(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ef1_orient_graph(g));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ef1OrientChores)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

void BM_EfxOrientChores(benchmark::State& state) {
    Multigraph g = chores_graph(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(efx_orient_chores(g));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EfxOrientChores)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_EfxOrientBivalued(benchmark::State& state) {
    BiValuedGraph bg = bivalued_graph(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(efx_orient_bivalued(bg));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EfxOrientBivalued)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_TwoSat(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const int vars = static_cast<int>(state.range(0));
    std::uniform_int_distribution<int> var(1, vars);
    TwoSatFormula f{vars, {}};
    for (int k = 0; k < 2 * vars; ++k) {
        f.clauses.push_back({var(rng) * (rng() & 1 ? 1 : -1), var(rng) * (rng() & 1 ? 1 : -1)});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_2sat(f));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TwoSat)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

// Exhaustive searches grow exponentially; these show where they stop being usable.
void BM_BruteOrientation(benchmark::State& state) {
    Multigraph g = chores_graph(static_cast<int>(state.range(0)), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_orientation(g, Criterion::efx0, SearchBudget{1u << 24, OnExceed::unknown}));
    }
    state.counters["edges"] = static_cast<double>(g.edges.size());
}
BENCHMARK(BM_BruteOrientation)->DenseRange(4, 8, 1)->Unit(benchmark::kMillisecond);

void BM_PrunedSearch(benchmark::State& state) {
    Multigraph g = chores_graph(static_cast<int>(state.range(0)), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_orientation(g, Criterion::efx0, SearchBudget{1u << 24, OnExceed::unknown}));
    }
    state.counters["edges"] = static_cast<double>(g.edges.size());
}
BENCHMARK(BM_PrunedSearch)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

void BM_MmsThreeAgents(benchmark::State& state) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> util(0, 9);
    const int m = static_cast<int>(state.range(0));
    Instance inst;
    inst.agents = 3;
    for (int j = 0; j < m; ++j) {
        inst.items.push_back("o" + std::to_string(j + 1));
    }
    inst.utilities.assign(3, std::vector<Rational>(m));
    for (auto& row : inst.utilities) {
        for (auto& u : row) {
            u = Rational(util(rng));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_mms(inst));
    }
}
BENCHMARK(BM_MmsThreeAgents)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
