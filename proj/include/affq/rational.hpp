#pragma once

// Exact scalars: arbitrary-precision rationals and Gaussian rationals (a + ib, a,b in Q).

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "affq/errors.hpp"

namespace affq {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {
// Decimal-only integer parse; the Boost string constructor treats a leading 0 as octal.
inline Integer parse_decimal_integer(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::runtime_error("empty integer");
  Integer value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::runtime_error("bad digit");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}
}  // namespace detail

/// Parses "n", "n/d" or a plain decimal such as "-1.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw ParseError("not a rational number: '" + s + "'"); };
  if (s.empty()) fail();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Integer num = detail::parse_decimal_integer(std::string_view(s).substr(0, slash));
      Integer den = detail::parse_decimal_integer(std::string_view(s).substr(slash + 1));
      if (den == 0) fail();
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") fail();
      Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(s.size() - dot - 1));
      return Rational(detail::parse_decimal_integer(digits), den);
    }
    return Rational(detail::parse_decimal_integer(s));
  } catch (const std::runtime_error&) {
    fail();
  }
  return {};
}

/// Canonical "num/den" text (denominator always printed).
inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}  // NOLINT: implicit by intent
  GaussianRational(long long real) : re(real) {}            // NOLINT
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

inline std::string to_string(const GaussianRational& z) {
  return "(" + format_rational(z.re) + ", " + format_rational(z.im) + ")";
}

}  // namespace affq
