#include "freeset/rational.hpp"

#include <stdexcept>

namespace freeset {

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) {
      throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
  }
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace freeset
