#include "fairdiv/rational.hpp"

#include "fairdiv/errors.hpp"

#include <cctype>

namespace fairdiv {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string digits(s);
    if (!digits.empty() && digits.front() == '+') {
        digits.erase(0, 1);
    }
    return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num)) {
        throw InputError("not a rational number: \"" + std::string(text) + "\"");
    }
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(num));
    }
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw InputError("not a rational number: \"" + std::string(text) + "\"");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) {
        throw InputError("zero denominator in \"" + std::string(text) + "\"");
    }
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& raw) {
    Rational value = raw;
    value.canonicalize();
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace fairdiv
