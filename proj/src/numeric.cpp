#include "inducedym/numeric.hpp"

#include "inducedym/errors.hpp"

#include <regex>

namespace inducedym {

namespace {
// BigInt's string constructor reads a leading zero as octal
BigInt decimal_integer(std::string digits) {
  const bool negative = !digits.empty() && digits[0] == '-';
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  BigInt v(digits);
  return negative ? BigInt(-v) : v;
}
}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex ratio(R"(\s*([+-]?\d+)\s*/\s*(\d+)\s*)");
  static const std::regex decimal(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, ratio)) {
    BigInt den = decimal_integer(m[2].str());
    if (den == 0) throw InputError("numeric", "zero denominator in '" + text + "'");
    return Rational(decimal_integer(m[1].str()), den);
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() + m[3].length()) > 0) {
    std::string digits = m[2].str() + m[3].str();
    long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
    exponent -= static_cast<long>(m[3].length());
    if (exponent > 4000 || exponent < -4000) throw InputError("numeric", "exponent out of range in '" + text + "'");
    BigInt num = decimal_integer(digits);
    if (m[1].str() == "-") num = -num;
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
    return exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  }
  throw InputError("numeric", "cannot parse '" + text + "' as a number");
}

}  // namespace inducedym
