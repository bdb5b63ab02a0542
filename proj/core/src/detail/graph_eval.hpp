#pragma once

#include "fairdiv/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fairdiv::detail {

// Orientation-level EFX0 / EF1 evaluation for goods graphs and chores graphs with weights
// rescaled to int64. Runs in O(|V| + |E|) per call, which keeps the exhaustive
// orientation oracles fast. Mixed graphs are not handled here.
class GraphEvaluator {
public:
    static std::optional<GraphEvaluator> build(const Multigraph& g);

    bool efx0(const std::vector<int>& recv) const;
    bool ef1(const std::vector<int>& recv) const;
    bool goods() const { return goods_; }

    struct ScaledEdge {
        int a, b;
        std::int64_t wa, wb;
        int pair;  // -1 for self-loops
    };
    const std::vector<ScaledEdge>& edges() const { return edges_; }
    int vertices() const { return n_; }

private:
    struct PairStats {
        // Index 0: edges of the pair held by the smaller endpoint x, valued by the larger y.
        // Index 1: edges held by y, valued by x.
        std::int64_t value[2];
        std::int64_t min_w[2];
        std::int64_t max_w[2];
        int count[2];
    };

    void tally(const std::vector<int>& recv) const;

    int n_ = 0;
    bool goods_ = true;
    std::vector<ScaledEdge> edges_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::vector<int>> pairs_at_;
    mutable std::vector<std::int64_t> own_;
    mutable std::vector<int> held_;
    mutable std::vector<std::int64_t> held_min_;
    mutable std::vector<std::int64_t> held_max_;
    mutable std::vector<PairStats> stats_;
};

}  // namespace fairdiv::detail
