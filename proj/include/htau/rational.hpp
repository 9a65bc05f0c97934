#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace htau {

// Exact rational. GMP keeps every mpq_class produced by arithmetic in lowest
// terms with a positive denominator; values built from raw numerator and
// denominator go through make_rational, which canonicalizes.
using Coefficient = mpq_class;

Coefficient make_rational(long num, long den = 1);

// Accepts "p/q", "p", optionally signed. Throws std::invalid_argument.
Coefficient parse_rational(std::string_view text);

std::string to_string(const Coefficient& c);

Coefficient factorial(int n);
Coefficient binomial(int n, int k);

} // namespace htau
