#include "sfpa/coefficient.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace sfpa {

namespace {

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::optional<Rational> parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  std::string digits;
  long fraction_digits = 0;
  while (pos < text.size() && is_digit(text[pos])) digits += text[pos++];
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      digits += text[pos++];
      ++fraction_digits;
    }
  }
  if (digits.empty()) return std::nullopt;

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
    std::string exp_digits;
    while (pos < text.size() && is_digit(text[pos])) exp_digits += text[pos++];
    if (exp_digits.empty() || exp_digits.size() > 6) return std::nullopt;
    exponent = std::stol(exp_digits);
    if (negative) exponent = -exponent;
  }
  if (pos != text.size()) return std::nullopt;

  mpz_class numerator(digits, 10);
  long scale = exponent - fraction_digits;
  Rational result;
  if (scale >= 0) {
    result = Rational(numerator * pow10(static_cast<unsigned long>(scale)));
  } else {
    result = Rational(numerator, pow10(static_cast<unsigned long>(-scale)));
  }
  result.canonicalize();
  return result;
}

double nearest_double(const Rational& value) {
  if (sgn(value) < 0) return -nearest_double(-value);
  const double below = value.get_d();
  const Rational exact_below(below);
  if (exact_below == value) return below;
  const double above = std::nextafter(below, std::numeric_limits<double>::infinity());
  if (std::isinf(above)) return below;
  const Rational midpoint = (exact_below + Rational(above)) / 2;
  if (value < midpoint) return below;
  if (value > midpoint) return above;
  std::uint64_t bits;
  std::memcpy(&bits, &below, sizeof bits);
  return (bits & 1) == 0 ? below : above;
}

std::string to_decimal_string(const Rational& value) {
  mpz_class den = value.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den != 1) return value.get_str();

  unsigned long scale = std::max(twos, fives);
  mpz_class scaled = value.get_num() * pow10(scale) / value.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (scale > 0) {
    if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
    digits.insert(digits.size() - scale, ".");
  }
  return negative ? "-" + digits : digits;
}

std::string CoefficientTraits<double>::to_string(double c) {
  // Shortest representation that reads back to the same double.
  char buffer[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof buffer, "%.*g", precision, c);
    if (std::strtod(buffer, nullptr) == c) break;
  }
  return buffer;
}

}  // namespace sfpa
