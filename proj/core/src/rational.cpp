#include "lci/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "lci/errors.hpp"

namespace lci {
namespace {

using boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorKind::BadInput, "not a rational: '" + std::string(whole) + "'");
  }
  s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));  // GMP reads a leading 0 as octal
  mpz_int value{std::string(s)};
  return negative ? mpz_int(-value) : value;
}

mpz_int pow10(unsigned k) {
  mpz_int result = 1;
  for (unsigned i = 0; i < k; ++i) result *= 10;
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string_view whole = text;
  if (text.empty()) throw Error(ErrorKind::BadInput, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_int num = parse_integer(text.substr(0, slash), whole);
    mpz_int den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorKind::BadInput, "zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size()) {
      throw Error(ErrorKind::BadInput, "bad exponent in '" + std::string(whole) + "'");
    }
    text = text.substr(0, e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw Error(ErrorKind::BadInput, "not a rational: '" + std::string(whole) + "'");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  if (!all_digits(digits)) {
    throw Error(ErrorKind::BadInput, "not a rational: '" + std::string(whole) + "'");
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value(mpz_int(digits), pow10(static_cast<unsigned>(frac_part.size())));
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::BadInput, "non-finite value");
  return Rational(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_fraction_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace lci
