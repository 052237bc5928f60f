#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace freeset {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational over arbitrary-precision integers, always in lowest terms
/// with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" form used by every serialized density. Integers are written "p/1".
std::string to_string(const Rational& value);

/// Inverse of to_string; also accepts a bare integer "p".
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

}  // namespace freeset
