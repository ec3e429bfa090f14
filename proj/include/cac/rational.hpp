#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

namespace cac {

// Expression templates are off so `auto` and std::min see plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Parses "p/q", "-7", "+3", "0.5", "-1.25" exactly. Decimals are read by
// positional notation, so "0.1" is 1/10 rather than the nearest double.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

double to_double(const Rational& value);

// Sign of a rational: -1, 0 or +1.
inline int sign(const Rational& value) {
  return value < 0 ? -1 : (value > 0 ? 1 : 0);
}

}  // namespace cac
