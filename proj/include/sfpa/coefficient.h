#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace sfpa {

/// Exact big rational (GMP). Always kept in canonical form.
using Rational = mpq_class;

/// Parses an unsigned decimal literal such as `0.25`, `1`, `.5` or `3e-4`
/// into the exact rational it denotes. Returns nullopt on malformed text.
std::optional<Rational> parse_decimal(std::string_view text);

/// Correctly rounded (to nearest, ties to even); GMP's get_d truncates.
double nearest_double(const Rational& value);

/// Exact decimal expansion when the denominator is of the form 2^a 5^b,
/// otherwise `num/den`.
std::string to_decimal_string(const Rational& value);

/// Numeric field used for polynomial coefficients. The two instantiations
/// are `double` (fast) and `Rational` (exact).
template <typename C>
struct CoefficientTraits;

template <>
struct CoefficientTraits<double> {
  static constexpr bool kExact = false;
  static double from_rational(const Rational& q) { return nearest_double(q); }
  static double to_double(double c) { return c; }
  static std::string to_string(double c);
};

template <>
struct CoefficientTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& c) { return nearest_double(c); }
  static std::string to_string(const Rational& c) { return c.get_str(); }
};

template <typename C>
concept Coefficient = requires { CoefficientTraits<C>::kExact; };

}  // namespace sfpa
