#include "detail/graph_eval.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace fairdiv::detail {

std::optional<GraphEvaluator> GraphEvaluator::build(const Multigraph& g) {
    GraphEvaluator ev;
    ev.n_ = g.vertices;
    bool any_positive = false;
    bool any_negative = false;
    mpz_class lcm = 1;
    for (const Edge& e : g.edges) {
        for (const Rational* w : {&e.wa, &e.wb}) {
            any_positive = any_positive || *w > 0;
            any_negative = any_negative || *w < 0;
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w->get_den_mpz_t());
        }
    }
    if (any_positive && any_negative) {
        return std::nullopt;
    }
    ev.goods_ = !any_negative;
    const mpz_class limit = mpz_class(1) << 60;
    mpz_class span = 0;
    std::map<std::pair<int, int>, int> pair_ids;
    ev.pairs_at_.assign(g.vertices, {});
    for (const Edge& e : g.edges) {
        mpz_class sa = e.wa.get_num() * (lcm / e.wa.get_den());
        mpz_class sb = e.wb.get_num() * (lcm / e.wb.get_den());
        span += abs(sa) + abs(sb);
        if (span > limit) {
            return std::nullopt;
        }
        ScaledEdge s{e.a, e.b, sa.get_si(), sb.get_si(), -1};
        if (!e.is_loop()) {
            auto key = std::minmax(e.a, e.b);
            auto [it, inserted] = pair_ids.emplace(key, static_cast<int>(ev.pairs_.size()));
            if (inserted) {
                ev.pairs_.push_back(key);
                ev.pairs_at_[key.first].push_back(it->second);
                ev.pairs_at_[key.second].push_back(it->second);
            }
            s.pair = it->second;
        }
        ev.edges_.push_back(s);
    }
    ev.own_.resize(g.vertices);
    ev.held_.resize(g.vertices);
    ev.held_min_.resize(g.vertices);
    ev.held_max_.resize(g.vertices);
    ev.stats_.resize(ev.pairs_.size());
    return ev;
}

void GraphEvaluator::tally(const std::vector<int>& recv) const {
    constexpr auto hi = std::numeric_limits<std::int64_t>::max();
    constexpr auto lo = std::numeric_limits<std::int64_t>::min();
    std::fill(own_.begin(), own_.end(), 0);
    std::fill(held_.begin(), held_.end(), 0);
    std::fill(held_min_.begin(), held_min_.end(), hi);
    std::fill(held_max_.begin(), held_max_.end(), lo);
    for (auto& s : stats_) {
        s = PairStats{{0, 0}, {hi, hi}, {lo, lo}, {0, 0}};
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const ScaledEdge& e = edges_[k];
        const int r = recv[k];
        const std::int64_t w_r = r == e.a ? e.wa : e.wb;
        own_[r] += w_r;
        ++held_[r];
        held_min_[r] = std::min(held_min_[r], w_r);
        held_max_[r] = std::max(held_max_[r], w_r);
        if (e.pair < 0) {
            continue;
        }
        const std::int64_t w_other = r == e.a ? e.wb : e.wa;
        const int side = r == pairs_[e.pair].first ? 0 : 1;
        PairStats& s = stats_[e.pair];
        s.value[side] += w_other;
        s.min_w[side] = std::min(s.min_w[side], w_other);
        s.max_w[side] = std::max(s.max_w[side], w_other);
        ++s.count[side];
    }
}

bool GraphEvaluator::efx0(const std::vector<int>& recv) const {
    tally(recv);
    if (goods_) {
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [x, y] = pairs_[p];
            const PairStats& s = stats_[p];
            // side 1: y's holdings seen by x; side 0: x's holdings seen by y.
            for (int side = 0; side < 2; ++side) {
                const int viewer = side == 1 ? x : y;
                const int holder = side == 1 ? y : x;
                if (!(own_[viewer] < s.value[side])) {
                    continue;
                }
                // Any other item of the holder is worth zero to the viewer.
                std::int64_t least = held_[holder] > s.count[side] ? 0 : s.min_w[side];
                if (own_[viewer] < s.value[side] - least) {
                    return false;
                }
            }
        }
        return true;
    }
    for (int i = 0; i < n_; ++i) {
        if (held_[i] == 0) {
            continue;
        }
        int charged = 0;
        std::int64_t best_other = std::numeric_limits<std::int64_t>::min();
        for (int p : pairs_at_[i]) {
            const int side = pairs_[p].first == i ? 1 : 0;
            if (stats_[p].count[side] > 0 && stats_[p].value[side] < 0) {
                ++charged;
                best_other = std::max(best_other, stats_[p].value[side]);
            }
        }
        if (charged < n_ - 1) {
            best_other = 0;
        }
        if (own_[i] - held_max_[i] < best_other) {
            return false;
        }
    }
    return true;
}

bool GraphEvaluator::ef1(const std::vector<int>& recv) const {
    tally(recv);
    if (goods_) {
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [x, y] = pairs_[p];
            const PairStats& s = stats_[p];
            for (int side = 0; side < 2; ++side) {
                const int viewer = side == 1 ? x : y;
                if (s.count[side] == 0 || !(own_[viewer] < s.value[side])) {
                    continue;
                }
                if (own_[viewer] < s.value[side] - s.max_w[side]) {
                    return false;
                }
            }
        }
        return true;
    }
    for (int i = 0; i < n_; ++i) {
        if (held_[i] == 0) {
            continue;
        }
        int charged = 0;
        std::int64_t best_other = std::numeric_limits<std::int64_t>::min();
        for (int p : pairs_at_[i]) {
            const int side = pairs_[p].first == i ? 1 : 0;
            if (stats_[p].count[side] > 0 && stats_[p].value[side] < 0) {
                ++charged;
                best_other = std::max(best_other, stats_[p].value[side]);
            }
        }
        if (charged < n_ - 1) {
            best_other = 0;
        }
        if (own_[i] - held_min_[i] < best_other) {
            return false;
        }
    }
    return true;
}

}  // namespace fairdiv::detail
