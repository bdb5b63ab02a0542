#pragma once

#include "fairdiv/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fairdiv::detail {

// Dense agent x item utility table over Num (int64_t after exact rescaling, or Rational).
// A forbidden entry stores -penalty[agent], where the penalty exceeds twice the agent's
// total absolute utility; any bundle with more forbidden items therefore compares strictly
// lower, which reproduces the lexicographic order of Value exactly.
template <class Num>
struct Table {
    using value_type = Num;

    int n = 0;
    int m = 0;
    std::vector<Num> u;
    std::vector<Num> penalty;
    std::vector<Num> half_span;  // total absolute utility of the row, excluding forbidden entries
    std::vector<std::uint8_t> forb;
    Rational scale{1};  // true utility = stored value / scale

    const Num& at(int i, int j) const { return u[static_cast<std::size_t>(i) * m + j]; }
    bool forbidden(int i, int j) const { return forb[static_cast<std::size_t>(i) * m + j] != 0; }
};

std::optional<Table<std::int64_t>> scaled_table(const Instance& inst);
Table<Rational> exact_table(const Instance& inst);

template <class Num>
Value decode(const Table<Num>& t, int agent, const Num& stored);
template <class Num>
Num encode(const Table<Num>& t, int agent, const Value& v);

template <class F>
decltype(auto) with_table(const Instance& inst, F&& f) {
    if (auto t = scaled_table(inst)) {
        return f(*t);
    }
    return f(exact_table(inst));
}

inline Rational to_rational(std::int64_t x) { return Rational(static_cast<long>(x)); }
inline const Rational& to_rational(const Rational& x) { return x; }

}  // namespace fairdiv::detail
