#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace metric_cluster {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Parses "7", "-3/2", "1.25", ".5" or "2.5e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    return InvalidInput("invalid rational literal '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw fail();

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    Integer d{std::string(den)};
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer{std::string(num)}, d);
  } else {
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (!detail::all_digits(exp_part) || exp_part.size() > 4) throw fail();
      exponent = std::stoi(std::string(exp_part));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s, frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw fail();
    if (!int_part.empty() && !detail::all_digits(int_part)) throw fail();
    if (!frac_part.empty() && !detail::all_digits(frac_part)) throw fail();
    std::string digits = std::string(int_part) + std::string(frac_part);
    Integer mantissa(digits.empty() ? std::string("0") : digits);
    exponent -= static_cast<int>(frac_part.size());
    if (exponent >= 0)
      value = Rational(mantissa * detail::pow10(static_cast<unsigned>(exponent)));
    else
      value = Rational(mantissa, detail::pow10(static_cast<unsigned>(-exponent)));
  }
  return negative ? Rational(-value) : value;
}

/// Canonical "p/q" form, or "p" for integers. parse_rational(to_string(x)) == x.
inline std::string to_string(const Rational& x) {
  const auto& den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

inline Integer floor_of(const Rational& x) {
  const Integer& n = boost::multiprecision::numerator(x);
  const Integer& d = boost::multiprecision::denominator(x);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

/// The exact value of a finite binary64.
inline Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value cannot be made exact");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(std::fabs(x), &exp);  // x = mant * 2^exp, mant in [0.5, 1)
  auto bits = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(bits)};
  Integer two_pow = Integer(1) << std::abs(exp);
  r = exp >= 0 ? Rational(r * two_pow) : Rational(r / two_pow);
  return x < 0 ? Rational(-r) : r;
}

/// Rational with the smallest denominator (then numerator) in [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  // Continued-fraction descent on 0 < lo <= hi.
  Integer fl = floor_of(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational frac_lo = lo - fl, frac_hi = hi - fl;
  return Rational(fl) + Rational(1) / simplest_between(Rational(1) / frac_hi, Rational(1) / frac_lo);
}

}  // namespace metric_cluster
