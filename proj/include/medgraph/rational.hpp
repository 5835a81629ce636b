#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace medgraph {

/// Exact rational in canonical form (reduced, positive denominator).
using Rational = mpq_class;

/// Parses "p", "p/q" or "-p/q". Throws ParseError on anything else or q == 0.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

} // namespace medgraph
