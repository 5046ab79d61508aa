#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace betakit {

using Rational = mpq_class;
using Integer = mpz_class;

/// Owning wrapper around an MPFR value.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

/// Closed interval [lower, upper] with dyadic endpoints. Every operation rounds
/// outward, so the result encloses every real obtainable from the operands.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision = 64);

  static Interval enclose(const Rational& value, mpfr_prec_t precision);
  static Interval enclose(long value, mpfr_prec_t precision);
  static Interval between(const Rational& lower, const Rational& upper, mpfr_prec_t precision);

  const BigFloat& lower() const noexcept { return lower_; }
  const BigFloat& upper() const noexcept { return upper_; }
  mpfr_prec_t precision() const noexcept { return lower_.precision(); }

  bool is_point() const;
  bool contains(const Rational& value) const;
  bool contains_zero() const;
  bool contains(const Interval& inner) const;

  /// True when upper - lower <= 2^-bits.
  bool width_at_most(long bits) const;
  /// Floor of -log2(width); a large sentinel for point intervals.
  long accuracy_bits() const;
  double width() const;
  double midpoint() const;

  /// Integer part decision: set when floor(lower) == floor(upper).
  bool floor_if_determined(Integer& out) const;

  Interval operator-() const;
  Interval operator+(const Interval& rhs) const;
  Interval operator-(const Interval& rhs) const;
  Interval operator*(const Interval& rhs) const;
  Interval operator/(const Interval& rhs) const;

  /// Both operands must enclose the same real; the result keeps the tighter ends.
  Interval intersect(const Interval& other) const;

  std::string to_string(int digits = 20) const;

 private:
  BigFloat lower_;
  BigFloat upper_;
};

/// Strict separation: every point of lhs is below every point of rhs.
bool certainly_less(const Interval& lhs, const Interval& rhs);

}  // namespace betakit
