#include "medgraph/rational.hpp"

#include "medgraph/errors.hpp"

#include <cctype>

namespace medgraph {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw ParseError("bad rational: '" + std::string(text) + "'");
    if (slash == std::string_view::npos)
        return Rational(parse_integer(num));
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("bad rational: '" + std::string(text) + "'");
    mpz_class d = parse_integer(den);
    if (d == 0)
        throw ParseError("zero denominator: '" + std::string(text) + "'");
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

} // namespace medgraph
