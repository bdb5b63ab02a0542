#include "detail/table.hpp"

#include "fairdiv/errors.hpp"

#include <type_traits>

namespace fairdiv::detail {

namespace {

template <class Num>
void fill_penalties(Table<Num>& t) {
    t.penalty.assign(t.n, Num(0));
    t.half_span.assign(t.n, Num(0));
    for (int i = 0; i < t.n; ++i) {
        Num span(0);
        for (int j = 0; j < t.m; ++j) {
            if (!t.forbidden(i, j)) {
                const Num& x = t.at(i, j);
                span += x < 0 ? Num(-x) : x;
            }
        }
        t.half_span[i] = span;
        t.penalty[i] = span + span + 1;
        for (int j = 0; j < t.m; ++j) {
            if (t.forbidden(i, j)) {
                t.u[static_cast<std::size_t>(i) * t.m + j] = -t.penalty[i];
            }
        }
    }
}

}  // namespace

Table<Rational> exact_table(const Instance& inst) {
    Table<Rational> t;
    t.n = inst.agents;
    t.m = inst.item_count();
    t.u.reserve(static_cast<std::size_t>(t.n) * t.m);
    t.forb.reserve(static_cast<std::size_t>(t.n) * t.m);
    for (int i = 0; i < t.n; ++i) {
        for (int j = 0; j < t.m; ++j) {
            t.u.push_back(inst.utilities[i][j]);
            t.forb.push_back(inst.is_forbidden(i, j) ? 1 : 0);
        }
    }
    fill_penalties(t);
    return t;
}

std::optional<Table<std::int64_t>> scaled_table(const Instance& inst) {
    mpz_class lcm = 1;
    for (int i = 0; i < inst.agents; ++i) {
        for (int j = 0; j < inst.item_count(); ++j) {
            if (!inst.is_forbidden(i, j)) {
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), inst.utilities[i][j].get_den_mpz_t());
            }
        }
    }
    // Every stored sum stays below 2^62 / (n + 2), leaving headroom for n-fold products.
    const mpz_class limit = (mpz_class(1) << 61) / (inst.agents + 2);
    Table<std::int64_t> t;
    t.n = inst.agents;
    t.m = inst.item_count();
    t.scale = Rational(lcm);
    t.u.reserve(static_cast<std::size_t>(t.n) * t.m);
    t.forb.reserve(static_cast<std::size_t>(t.n) * t.m);
    for (int i = 0; i < t.n; ++i) {
        mpz_class span = 0;
        long forbidden_count = 0;
        for (int j = 0; j < t.m; ++j) {
            if (inst.is_forbidden(i, j)) {
                ++forbidden_count;
                t.u.push_back(0);
                t.forb.push_back(1);
                continue;
            }
            const Rational& x = inst.utilities[i][j];
            mpz_class scaled = x.get_num() * (lcm / x.get_den());
            span += abs(scaled);
            if (span > limit) {
                return std::nullopt;
            }
            t.u.push_back(scaled.get_si());
            t.forb.push_back(0);
        }
        mpz_class total = span + (2 * span + 1) * forbidden_count;
        if (total > limit) {
            return std::nullopt;
        }
    }
    fill_penalties(t);
    return t;
}

template <class Num>
Value decode(const Table<Num>& t, int agent, const Num& stored) {
    const Num& p = t.penalty[agent];
    const Num& s = t.half_span[agent];
    long count = 0;
    Num rest = stored;
    while (rest < -s) {
        rest += p;
        ++count;
    }
    return Value(count, to_rational(rest) / t.scale);
}

template <class Num>
Num encode(const Table<Num>& t, int agent, const Value& v) {
    Rational r = v.amount * t.scale;
    Num amount;
    if constexpr (std::is_same_v<Num, Rational>) {
        amount = r;
    } else {
        if (r.get_den() != 1) {
            throw PreconditionError("value is not representable on the rescaled table");
        }
        amount = r.get_num().get_si();
    }
    return amount - t.penalty[agent] * Num(v.forbidden);
}

template Value decode(const Table<std::int64_t>&, int, const std::int64_t&);
template Value decode(const Table<Rational>&, int, const Rational&);
template std::int64_t encode(const Table<std::int64_t>&, int, const Value&);
template Rational encode(const Table<Rational>&, int, const Value&);

}  // namespace fairdiv::detail
