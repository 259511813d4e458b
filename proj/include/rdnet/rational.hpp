#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace rdnet {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses an optionally signed decimal literal ("12", "-0.05", "1.5e-3") exactly.
std::optional<Rational> parse_decimal(std::string_view text);

/// "p/q" or "p" when q == 1.
std::string to_string(const Rational& r);

/// Exact decimal rendering when the denominator is of the form 2^a 5^b,
/// otherwise "p/q". Reparses to the same value through parse_decimal
/// in the former case.
std::string to_decimal_string(const Rational& r);

double to_double(const Rational& r);

/// Exact value of a finite double.
Rational from_double(double x);

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

} // namespace rdnet
