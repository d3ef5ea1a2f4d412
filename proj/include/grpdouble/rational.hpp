#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace grpdouble {

// Exact rational arithmetic. The 128-bit integer is overflow-checked, so an
// out-of-range intermediate throws std::overflow_error instead of wrapping.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

// "p/q" in lowest terms, or "p" when the denominator is 1. Never decimal.
std::string to_string(const Rational& q);

// Accepts "p/q", "p", or "-p/q". Throws SpecError on bad input or zero
// denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

// Exact floor of a rational as a signed 64-bit integer.
std::int64_t floor_to_int(const Rational& q);

}  // namespace grpdouble
