#include "detail/evaluator.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace fairdiv::detail {

template <class Num>
void Evaluator<Num>::load(const Owners& owners) const {
    const int n = t_.n;
    bundles_.assign(n, {});
    for (int j = 0; j < t_.m; ++j) {
        if (owners[j] >= 0) {
            bundles_[owners[j]].push_back(j);
        }
    }
    sums_.assign(static_cast<std::size_t>(n) * n, Num(0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            Num& s = sums_[static_cast<std::size_t>(i) * n + k];
            for (int j : bundles_[k]) {
                s += t_.at(i, j);
            }
        }
    }
}

template <class Num>
Verdict<Num> Evaluator<Num>::evaluate(const Owners& owners, Criterion c) const {
    load(owners);
    switch (c) {
        case Criterion::ef:
            return ef();
        case Criterion::prop:
            return prop();
        case Criterion::ef1:
            return ef1();
        case Criterion::efx0:
            return efx(true);
        case Criterion::efx_minus:
            return efx(false);
        default:
            break;
    }
    return {};
}

template <class Num>
Verdict<Num> Evaluator<Num>::ef() const {
    const int n = t_.n;
    for (int i = 0; i < n; ++i) {
        const Num& own = sums_[static_cast<std::size_t>(i) * n + i];
        for (int k = 0; k < n; ++k) {
            if (k != i && own < sums_[static_cast<std::size_t>(i) * n + k]) {
                Verdict<Num> v;
                v.holds = false;
                v.envier = i;
                v.envied = k;
                return v;
            }
        }
    }
    return {};
}

template <class Num>
Verdict<Num> Evaluator<Num>::prop() const {
    const int n = t_.n;
    for (int i = 0; i < n; ++i) {
        Num total(0);
        for (int j = 0; j < t_.m; ++j) {
            total += t_.at(i, j);
        }
        const Num& own = sums_[static_cast<std::size_t>(i) * n + i];
        if (own * Num(n) < total) {
            Verdict<Num> v;
            v.holds = false;
            v.agent = i;
            v.has_values = true;
            v.threshold = total;  // caller divides by n
            v.received = own;
            return v;
        }
    }
    return {};
}

template <class Num>
Verdict<Num> Evaluator<Num>::ef1() const {
    const int n = t_.n;
    for (int i = 0; i < n; ++i) {
        const Num& own = sums_[static_cast<std::size_t>(i) * n + i];
        int worst_chore = -1;
        for (int j : bundles_[i]) {
            if (t_.at(i, j) <= 0 && (worst_chore < 0 || t_.at(i, j) < t_.at(i, worst_chore))) {
                worst_chore = j;
            }
        }
        for (int k = 0; k < n; ++k) {
            if (k == i) {
                continue;
            }
            const Num& other = sums_[static_cast<std::size_t>(i) * n + k];
            if (!(own < other)) {
                continue;
            }
            int best_good = -1;
            for (int j : bundles_[k]) {
                if (t_.at(i, j) >= 0 && (best_good < 0 || t_.at(i, best_good) < t_.at(i, j))) {
                    best_good = j;
                }
            }
            bool fixed = false;
            if (best_good >= 0 && !(own < other - t_.at(i, best_good))) {
                fixed = true;
            }
            if (worst_chore >= 0 && !(own - t_.at(i, worst_chore) < other)) {
                fixed = true;
            }
            if (!fixed) {
                Verdict<Num> v;
                v.holds = false;
                v.envier = i;
                v.envied = k;
                v.item = best_good >= 0 ? best_good : worst_chore;
                return v;
            }
        }
    }
    return {};
}

template <class Num>
Verdict<Num> Evaluator<Num>::efx(bool zero_items_count) const {
    const int n = t_.n;
    const bool goods_clause = kind_ != InstanceKind::chores;
    const bool chores_clause = kind_ != InstanceKind::goods;
    for (int i = 0; i < n; ++i) {
        const Num& own = sums_[static_cast<std::size_t>(i) * n + i];
        // Chore in i's own bundle whose removal helps least.
        int mildest_chore = -1;
        if (chores_clause) {
            for (int j : bundles_[i]) {
                const Num& x = t_.at(i, j);
                bool counts = zero_items_count ? x <= 0 : x < 0;
                if (counts && (mildest_chore < 0 || t_.at(i, mildest_chore) < x)) {
                    mildest_chore = j;
                }
            }
        }
        for (int k = 0; k < n; ++k) {
            if (k == i) {
                continue;
            }
            const Num& other = sums_[static_cast<std::size_t>(i) * n + k];
            if (!(own < other)) {
                continue;
            }
            if (goods_clause) {
                int least_good = -1;
                for (int j : bundles_[k]) {
                    const Num& x = t_.at(i, j);
                    bool counts = zero_items_count ? x >= 0 : x > 0;
                    if (counts && (least_good < 0 || x < t_.at(i, least_good))) {
                        least_good = j;
                    }
                }
                if (least_good >= 0 && own < other - t_.at(i, least_good)) {
                    Verdict<Num> v;
                    v.holds = false;
                    v.envier = i;
                    v.envied = k;
                    v.item = least_good;
                    return v;
                }
            }
            if (mildest_chore >= 0 && own - t_.at(i, mildest_chore) < other) {
                Verdict<Num> v;
                v.holds = false;
                v.envier = i;
                v.envied = k;
                v.item = mildest_chore;
                return v;
            }
        }
    }
    return {};
}

namespace {

template <class Num>
class MmsSearch {
public:
    MmsSearch(const Table<Num>& t, int agent) : n_(t.n) {
        const int m = t.m;
        order_.resize(m);
        std::iota(order_.begin(), order_.end(), 0);
        std::vector<Num> row(m);
        for (int j = 0; j < m; ++j) {
            row[j] = t.at(agent, j);
        }
        auto mag = [](const Num& x) { return x < 0 ? Num(-x) : x; };
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return mag(row[b]) < mag(row[a]); });
        vals_.resize(m);
        for (int k = 0; k < m; ++k) {
            vals_[k] = row[order_[k]];
        }
        suffix_all_.assign(m + 1, Num(0));
        suffix_pos_.assign(m + 1, Num(0));
        for (int k = m - 1; k >= 0; --k) {
            suffix_all_[k] = suffix_all_[k + 1] + vals_[k];
            suffix_pos_[k] = suffix_pos_[k + 1] + (vals_[k] > 0 ? vals_[k] : Num(0));
        }
    }

    Num run(std::vector<int>& assign_out) {
        const int m = static_cast<int>(vals_.size());
        load_.assign(n_, Num(0));
        assign_.assign(m, 0);
        greedy();
        used_ = 0;
        load_.assign(n_, Num(0));
        dfs(0);
        assign_out.assign(m, 0);
        for (int k = 0; k < m; ++k) {
            assign_out[order_[k]] = best_assign_[k];
        }
        return best_;
    }

private:
    void greedy() {
        const int m = static_cast<int>(vals_.size());
        for (int k = 0; k < m; ++k) {
            int target = 0;
            for (int b = 1; b < n_; ++b) {
                bool better = vals_[k] >= 0 ? load_[b] < load_[target] : load_[target] < load_[b];
                if (better) {
                    target = b;
                }
            }
            load_[target] += vals_[k];
            assign_[k] = target;
        }
        best_ = *std::min_element(load_.begin(), load_.end());
        best_assign_ = assign_;
    }

    bool hopeless(int k) const {
        Num total = suffix_all_[k];
        for (const Num& x : load_) {
            total += x;
        }
        if (total <= best_ * Num(n_)) {
            return true;
        }
        Num need(0);
        bool below = false;
        for (const Num& x : load_) {
            if (x <= best_) {
                below = true;
                need += best_ - x;
            }
        }
        return below && need >= suffix_pos_[k];
    }

    void dfs(int k) {
        const int m = static_cast<int>(vals_.size());
        if (k == m) {
            Num low = *std::min_element(load_.begin(), load_.end());
            if (best_ < low) {
                best_ = low;
                best_assign_ = assign_;
            }
            return;
        }
        if (hopeless(k)) {
            return;
        }
        const int limit = std::min(used_ + 1, n_);
        std::vector<int> choices(limit);
        std::iota(choices.begin(), choices.end(), 0);
        // Goods go to light bundles first, chores to heavy ones: good leaves early.
        const bool good = vals_[k] >= 0;
        std::stable_sort(choices.begin(), choices.end(), [&](int a, int b) {
            return good ? load_[a] < load_[b] : load_[b] < load_[a];
        });
        for (int b : choices) {
            const int saved_used = used_;
            if (b == used_) {
                ++used_;
            }
            load_[b] += vals_[k];
            assign_[k] = b;
            dfs(k + 1);
            load_[b] -= vals_[k];
            used_ = saved_used;
        }
    }

    int n_;
    int used_ = 0;
    std::vector<int> order_;
    std::vector<Num> vals_;
    std::vector<Num> suffix_all_;
    std::vector<Num> suffix_pos_;
    std::vector<Num> load_;
    std::vector<int> assign_;
    Num best_{};
    std::vector<int> best_assign_;
};

}  // namespace

template <class Num>
Num mms_value(const Table<Num>& t, int agent, std::vector<int>& assign) {
    MmsSearch<Num> search(t, agent);
    return search.run(assign);
}

template class Evaluator<std::int64_t>;
template class Evaluator<Rational>;
template std::int64_t mms_value(const Table<std::int64_t>&, int, std::vector<int>&);
template Rational mms_value(const Table<Rational>&, int, std::vector<int>&);

}  // namespace fairdiv::detail
