#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "roughlab/errors.hpp"

namespace roughlab {

// Exact rational on int64, always stored reduced with positive denominator.
// Used so regime boundaries (d vs 1/(2nu)) are decided without floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw ConfigInvalid("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  // a < b  <=>  a.num*b.den < b.num*a.den; operands here stay far below overflow
  // (parsed literals have den <= 10^9 and experiment arithmetic multiplies by small ints).
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

  Rational times(std::int64_t k) const { return Rational(num * k, den); }
};

// Parses "3/10" or a plain decimal like "0.3" (decimal strings are exact
// rationals: mantissa / 10^digits). Throws ConfigInvalid on anything else.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ConfigInvalid("empty rational");
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const std::int64_t n = std::stoll(s.substr(0, slash));
      const std::int64_t d = std::stoll(s.substr(slash + 1));
      return Rational(n, d);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s), 1);
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw ConfigInvalid("decimal too long for exact rational: " + s);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool neg = !whole.empty() && whole[0] == '-';
    const std::int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
    const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    const std::int64_t n = (w < 0 || neg) ? w * den - f : w * den + f;
    return Rational(n, den);
  } catch (const std::invalid_argument&) {
    throw ConfigInvalid("cannot parse rational: " + s);
  } catch (const std::out_of_range&) {
    throw ConfigInvalid("rational out of range: " + s);
  }
}

}  // namespace roughlab
