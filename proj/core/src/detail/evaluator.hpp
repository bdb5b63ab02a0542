#pragma once

#include "detail/table.hpp"
#include "fairdiv/fairness.hpp"

#include <vector>

namespace fairdiv::detail {

// Index-level outcome of one criterion evaluation.
template <class Num>
struct Verdict {
    bool holds = true;
    int envier = -1;
    int envied = -1;
    int item = -1;
    int agent = -1;
    bool has_values = false;
    Num threshold{};
    Num received{};
};

// Evaluates EF, PROP, EF1, EFX0 and EFX- over owner vectors. Unallocated items (owner -1)
// are ignored, which is how partial allocations are judged.
template <class Num>
class Evaluator {
public:
    Evaluator(const Table<Num>& table, InstanceKind kind) : t_(table), kind_(kind) {}

    Verdict<Num> evaluate(const Owners& owners, Criterion c) const;

    const Table<Num>& table() const { return t_; }
    InstanceKind kind() const { return kind_; }

private:
    void load(const Owners& owners) const;
    Verdict<Num> ef() const;
    Verdict<Num> prop() const;
    Verdict<Num> ef1() const;
    Verdict<Num> efx(bool zero_items_count) const;

    const Table<Num>& t_;
    InstanceKind kind_;
    mutable std::vector<std::vector<int>> bundles_;
    mutable std::vector<Num> sums_;  // sums_[i * n + k] = u_i(bundle k)
};

// Maximin share of one agent over n bundles; `assign` receives the bundle of every item.
template <class Num>
Num mms_value(const Table<Num>& t, int agent, std::vector<int>& assign);

}  // namespace fairdiv::detail
