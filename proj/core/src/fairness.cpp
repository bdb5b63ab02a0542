#include "fairdiv/fairness.hpp"

#include "detail/evaluator.hpp"
#include "detail/graph_eval.hpp"
#include "detail/table.hpp"
#include "fairdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace fairdiv {

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::ef:
            return "ef";
        case Criterion::prop:
            return "prop";
        case Criterion::ef1:
            return "ef1";
        case Criterion::efx0:
            return "efx0";
        case Criterion::efx_minus:
            return "efx-";
        case Criterion::mms:
            return "mms";
        case Criterion::po:
            return "po";
    }
    return "?";
}

Criterion parse_criterion(std::string_view name) {
    if (name == "ef") return Criterion::ef;
    if (name == "prop") return Criterion::prop;
    if (name == "ef1") return Criterion::ef1;
    if (name == "efx0" || name == "efx") return Criterion::efx0;
    if (name == "efx-" || name == "efx_minus") return Criterion::efx_minus;
    if (name == "mms") return Criterion::mms;
    if (name == "po") return Criterion::po;
    throw InputError("unknown criterion \"" + std::string(name) + "\"");
}

namespace {

int ceil_log2(int n) {
    int bits = 0;
    while ((1 << bits) < n) {
        ++bits;
    }
    return bits;
}

template <class Num>
FairnessReport to_report(const Instance& inst, const detail::Table<Num>& t, Criterion c,
                         const detail::Verdict<Num>& v) {
    FairnessReport r;
    r.criterion = c;
    r.holds = v.holds;
    if (v.holds) {
        return r;
    }
    Witness w;
    if (v.envier >= 0) w.envier = v.envier;
    if (v.envied >= 0) w.envied = v.envied;
    if (v.item >= 0) w.item = inst.items[v.item];
    if (v.agent >= 0) w.agent = v.agent;
    if (v.has_values) {
        Value threshold = detail::decode(t, v.agent, v.threshold);
        if (c == Criterion::prop) {
            threshold.amount /= inst.agents;
        }
        w.threshold = threshold;
        w.received = detail::decode(t, v.agent, v.received);
    }
    r.witness = w;
    return r;
}

}  // namespace

bool mms_within_guard(int agents, int items) {
    return static_cast<long>(items) * ceil_log2(agents) <= kMmsGuard;
}

MmsThreshold mms_threshold(const Instance& inst, int agent) {
    if (agent < 0 || agent >= inst.agents) {
        throw InputError("unknown agent " + std::to_string(agent));
    }
    if (!mms_within_guard(inst.agents, inst.item_count())) {
        throw SizeGuardError("instance too large for exact MMS (" + std::to_string(inst.item_count()) +
                             " items, " + std::to_string(inst.agents) + " agents)");
    }
    return detail::with_table(inst, [&](const auto& t) {
        std::vector<int> assign;
        auto best = detail::mms_value(t, agent, assign);
        MmsThreshold out;
        out.threshold = detail::decode(t, agent, best);
        out.partition.bundles.resize(inst.agents);
        for (int j = 0; j < inst.item_count(); ++j) {
            out.partition.bundles[assign[j]].push_back(inst.items[j]);
        }
        return out;
    });
}

MmsProfile mms_profile(const Instance& inst) {
    MmsProfile p;
    for (int i = 0; i < inst.agents; ++i) {
        MmsThreshold t = mms_threshold(inst, i);
        p.thresholds.push_back(t.threshold);
        p.witnesses.push_back(std::move(t.partition));
    }
    return p;
}

FairnessReport check_mms(const Instance& inst, const Allocation& alloc, const MmsProfile& profile) {
    FairnessReport r;
    r.criterion = Criterion::mms;
    for (int i = 0; i < inst.agents; ++i) {
        Value got = bundle_value(inst, i, alloc.bundles[i]);
        if (got < profile.thresholds[i]) {
            r.holds = false;
            Witness w;
            w.agent = i;
            w.threshold = profile.thresholds[i];
            w.received = got;
            r.witness = w;
            return r;
        }
    }
    return r;
}

FairnessReport check_mms(const Instance& inst, const Allocation& alloc) {
    owners_of(inst, alloc);
    return check_mms(inst, alloc, mms_profile(inst));
}

namespace {

template <class Num>
class DominanceSearch {
public:
    DominanceSearch(const detail::Table<Num>& t, const Owners& base) : t_(t) {
        const int n = t.n;
        const int m = t.m;
        base_.assign(n, Num(0));
        for (int j = 0; j < m; ++j) {
            base_[base[j]] += t.at(base[j], j);
        }
        // rest_[i * (m + 1) + j]: the most agent i can still gain from items j..m-1.
        rest_.assign(static_cast<std::size_t>(n) * (m + 1), Num(0));
        for (int i = 0; i < n; ++i) {
            for (int j = m - 1; j >= 0; --j) {
                const Num& x = t.at(i, j);
                rest_[static_cast<std::size_t>(i) * (m + 1) + j] =
                    rest_[static_cast<std::size_t>(i) * (m + 1) + j + 1] + (x > 0 ? x : Num(0));
            }
        }
        cur_.assign(n, Num(0));
        owner_.assign(m, -1);
    }

    bool run(Owners& witness) {
        if (dfs(0)) {
            witness = owner_;
            return true;
        }
        return false;
    }

private:
    bool dfs(int j) {
        const int n = t_.n;
        const int m = t_.m;
        for (int i = 0; i < n; ++i) {
            if (cur_[i] + rest_[static_cast<std::size_t>(i) * (m + 1) + j] < base_[i]) {
                return false;
            }
        }
        if (j == m) {
            bool strict = false;
            for (int i = 0; i < n; ++i) {
                if (base_[i] < cur_[i]) {
                    strict = true;
                }
            }
            return strict;
        }
        for (int i = 0; i < n; ++i) {
            owner_[j] = i;
            cur_[i] += t_.at(i, j);
            if (dfs(j + 1)) {
                return true;
            }
            cur_[i] -= t_.at(i, j);
        }
        owner_[j] = -1;
        return false;
    }

    const detail::Table<Num>& t_;
    std::vector<Num> base_;
    std::vector<Num> rest_;
    std::vector<Num> cur_;
    Owners owner_;
};

bool within_budget(int n, int m, std::uint64_t budget) {
    long double states = std::pow(static_cast<long double>(n), m);
    return states <= static_cast<long double>(budget);
}

}  // namespace

FairnessReport check_po(const Instance& inst, const Allocation& alloc, const SearchBudget& budget) {
    Owners owners = owners_of(inst, alloc);
    if (!within_budget(inst.agents, inst.item_count(), budget.max_states)) {
        throw SizeGuardError("instance too large for exhaustive Pareto check (n^m exceeds budget)");
    }
    return detail::with_table(inst, [&](const auto& t) {
        using Num = typename std::decay_t<decltype(t)>::value_type;
        FairnessReport r;
        r.criterion = Criterion::po;
        DominanceSearch<Num> search(t, owners);
        Owners better;
        if (search.run(better)) {
            r.holds = false;
            Witness w;
            w.dominating = allocation_from_owners(inst, better);
            r.witness = w;
        }
        return r;
    });
}

FairnessReport check(const Instance& inst, const Allocation& alloc, Criterion criterion,
                     const CheckOptions& options) {
    if (criterion == Criterion::mms) {
        return check_mms(inst, alloc);
    }
    if (criterion == Criterion::po) {
        return check_po(inst, alloc, options.budget);
    }
    if (alloc.partial && !(criterion == Criterion::efx0 && options.allow_partial)) {
        throw InputError("criterion " + to_string(criterion) + " needs a complete allocation");
    }
    Owners owners = owners_of(inst, alloc);
    InstanceKind kind = instance_kind(inst);
    FairnessReport report = detail::with_table(inst, [&](const auto& t) {
        using Num = typename std::decay_t<decltype(t)>::value_type;
        detail::Evaluator<Num> eval(t, kind);
        return to_report(inst, t, criterion, eval.evaluate(owners, criterion));
    });
    report.partial = alloc.partial;
    report.extension = kind == InstanceKind::mixed &&
                       (criterion == Criterion::efx0 || criterion == Criterion::efx_minus);
    return report;
}

OwnersPredicate make_predicate(const Instance& inst, Criterion criterion) {
    if (criterion == Criterion::po) {
        auto shared = std::make_shared<Instance>(inst);
        return [shared](const Owners& owners) {
            return check_po(*shared, allocation_from_owners(*shared, owners)).holds;
        };
    }
    if (criterion == Criterion::mms) {
        auto shared = std::make_shared<Instance>(inst);
        auto profile = std::make_shared<MmsProfile>(mms_profile(inst));
        return [shared, profile](const Owners& owners) {
            for (int i = 0; i < shared->agents; ++i) {
                Value got;
                for (std::size_t j = 0; j < owners.size(); ++j) {
                    if (owners[j] == i) {
                        got += shared->value(i, static_cast<int>(j));
                    }
                }
                if (got < profile->thresholds[i]) {
                    return false;
                }
            }
            return true;
        };
    }
    InstanceKind kind = instance_kind(inst);
    if (auto scaled = detail::scaled_table(inst)) {
        auto table = std::make_shared<detail::Table<std::int64_t>>(std::move(*scaled));
        auto eval = std::make_shared<detail::Evaluator<std::int64_t>>(*table, kind);
        return [table, eval, criterion](const Owners& owners) {
            return eval->evaluate(owners, criterion).holds;
        };
    }
    auto table = std::make_shared<detail::Table<Rational>>(detail::exact_table(inst));
    auto eval = std::make_shared<detail::Evaluator<Rational>>(*table, kind);
    return [table, eval, criterion](const Owners& owners) {
        return eval->evaluate(owners, criterion).holds;
    };
}

bool check_pef(const Multigraph& g, const Orientation& pi, int i, int j) {
    if (i == j) {
        throw PreconditionError("private envy-freeness needs two distinct vertices");
    }
    Receivers recv = receivers_of(g, pi);
    Rational i_own, i_other, j_own, j_other;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        if (e.is_loop() || recv[k] < 0) {
            continue;
        }
        bool joins = (e.a == i && e.b == j) || (e.a == j && e.b == i);
        if (!joins) {
            continue;
        }
        if (recv[k] == i) {
            i_own += e.weight_at(i);
            j_other += e.weight_at(j);
        } else {
            j_own += e.weight_at(j);
            i_other += e.weight_at(i);
        }
    }
    return i_own >= i_other && j_own >= j_other;
}

namespace {

bool orientation_holds(const Multigraph& g, const Receivers& recv, Criterion c) {
    if (std::find(recv.begin(), recv.end(), -1) != recv.end()) {
        throw InputError("orientation is partial");
    }
    if (auto ev = detail::GraphEvaluator::build(g)) {
        return c == Criterion::efx0 ? ev->efx0(recv) : ev->ef1(recv);
    }
    return make_predicate(graphical_to_instance(g), c)(recv);
}

}  // namespace

bool orientation_is_efx0(const Multigraph& g, const Receivers& recv) {
    return orientation_holds(g, recv, Criterion::efx0);
}

bool orientation_is_ef1(const Multigraph& g, const Receivers& recv) {
    return orientation_holds(g, recv, Criterion::ef1);
}

}  // namespace fairdiv
