#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace lci {

using Rational = boost::multiprecision::mpq_rational;

// Accepts "p/q", plain integers, and decimals with an optional exponent
// ("0.375", "-1.5e-3"). Decimals are converted exactly.
Rational parse_rational(std::string_view text);

// Exact binary value of a finite double.
Rational rational_from_double(double value);

double to_double(const Rational& value);

// "p/q", or "p" when the denominator is one.
std::string to_fraction_string(const Rational& value);

}  // namespace lci
