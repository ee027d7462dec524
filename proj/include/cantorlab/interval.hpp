#pragma once

#include <mpfr.h>

#include <string>

#include "cantorlab/rational.hpp"

namespace cantorlab {

inline constexpr long kDefaultPrecision = 256;

/// Closed interval [lo, hi] of MPFR numbers with outward (directed) rounding.
/// Every operation returns an enclosure of the exact result; the width of
/// the enclosure is the rigorous error bound.
class Interval {
 public:
  explicit Interval(long precision = kDefaultPrecision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_long(long value, long precision);
  static Interval from_ulong(unsigned long value, long precision);
  static Interval from_bigint(const BigInt& value, long precision);
  static Interval from_rational(const Rational& value, long precision);
  static Interval from_bounds(double lo, double hi, long precision);
  static Interval pi(long precision);
  /// The construction constant q = 3/pi^2 = 1/(2 zeta(2)).
  static Interval q(long precision);

  long precision() const { return static_cast<long>(mpfr_get_prec(lo_)); }

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const;
  /// Upper bound on hi - lo, as a double.
  double width_double() const;

  bool contains(const Interval& other) const;
  bool contains_zero() const;
  bool overlaps(const Interval& other) const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool certainly_less(const Interval& other) const;

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  Interval operator-() const;

  /// Convex hull of both intervals.
  static Interval hull(const Interval& a, const Interval& b);
  /// [lo - r, hi + r] for r >= 0.
  Interval widened(const Interval& radius) const;

  /// Midpoint rendered with the given number of significant digits.
  std::string decimal(int digits) const;
  /// Digits justified by the precision (never fewer than 17).
  std::string decimal() const;

  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval abs(const Interval& x);
  /// base^exponent for base > 0.
  friend Interval pow(const Interval& base, const Interval& exponent);
  friend Interval inverse_power(unsigned long n, const Interval& s);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// n^(-s) for an integer n >= 1.
Interval inverse_power(unsigned long n, const Interval& s);

}  // namespace cantorlab
