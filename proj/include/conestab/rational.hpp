#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace conestab {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "p/q" or "p" (integer denominator omitted).
std::string to_string(const Rational& q);

/// Parses "p", "p/q", or a finite decimal such as "2.5".
Rational parse_rational(const std::string& text);

}  // namespace conestab
