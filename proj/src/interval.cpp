#include "betakit/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "betakit/error.hpp"

namespace betakit {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(precision, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

Rational BigFloat::to_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

Interval::Interval(mpfr_prec_t precision) : lower_(precision), upper_(precision) {}

Interval Interval::enclose(const Rational& value, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_q(out.lower_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.upper_.get(), value.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::enclose(long value, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_si(out.lower_.get(), value, MPFR_RNDD);
  mpfr_set_si(out.upper_.get(), value, MPFR_RNDU);
  return out;
}

Interval Interval::between(const Rational& lower, const Rational& upper, mpfr_prec_t precision) {
  if (lower > upper) throw Error(ErrorCode::InvalidArgument, "interval bounds out of order");
  Interval out(precision);
  mpfr_set_q(out.lower_.get(), lower.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.upper_.get(), upper.get_mpq_t(), MPFR_RNDU);
  return out;
}

bool Interval::is_point() const { return mpfr_equal_p(lower_.get(), upper_.get()) != 0; }

bool Interval::contains(const Rational& value) const {
  return mpfr_cmp_q(lower_.get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(upper_.get(), value.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lower_.get()) <= 0 && mpfr_sgn(upper_.get()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lower_.get(), inner.lower_.get()) &&
         mpfr_greaterequal_p(upper_.get(), inner.upper_.get());
}

bool Interval::width_at_most(long bits) const {
  BigFloat diff(std::max(lower_.precision(), upper_.precision()) + 2);
  mpfr_sub(diff.get(), upper_.get(), lower_.get(), MPFR_RNDU);
  return mpfr_cmp_si_2exp(diff.get(), 1, -bits) <= 0;
}

long Interval::accuracy_bits() const {
  if (is_point()) return std::numeric_limits<int>::max() / 2;
  BigFloat diff(std::max(lower_.precision(), upper_.precision()) + 2);
  mpfr_sub(diff.get(), upper_.get(), lower_.get(), MPFR_RNDU);
  // diff = m * 2^e with 1/2 <= m < 1, so 2^(e-1) <= diff < 2^e.
  const long exponent = mpfr_get_exp(diff.get());
  return -exponent;
}

double Interval::width() const {
  BigFloat diff(std::max(lower_.precision(), upper_.precision()) + 2);
  mpfr_sub(diff.get(), upper_.get(), lower_.get(), MPFR_RNDU);
  return mpfr_get_d(diff.get(), MPFR_RNDU);
}

double Interval::midpoint() const {
  BigFloat sum(precision() + 2);
  mpfr_add(sum.get(), lower_.get(), upper_.get(), MPFR_RNDN);
  mpfr_div_2ui(sum.get(), sum.get(), 1, MPFR_RNDN);
  return sum.to_double();
}

bool Interval::floor_if_determined(Integer& out) const {
  Integer lo, hi;
  mpfr_get_z(lo.get_mpz_t(), lower_.get(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), upper_.get(), MPFR_RNDD);
  if (lo != hi) return false;
  out = lo;
  return true;
}

Interval Interval::operator-() const {
  Interval out(precision());
  mpfr_neg(out.lower_.get(), upper_.get(), MPFR_RNDD);
  mpfr_neg(out.upper_.get(), lower_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::operator+(const Interval& rhs) const {
  Interval out(std::max(precision(), rhs.precision()));
  mpfr_add(out.lower_.get(), lower_.get(), rhs.lower_.get(), MPFR_RNDD);
  mpfr_add(out.upper_.get(), upper_.get(), rhs.upper_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::operator-(const Interval& rhs) const {
  Interval out(std::max(precision(), rhs.precision()));
  mpfr_sub(out.lower_.get(), lower_.get(), rhs.upper_.get(), MPFR_RNDD);
  mpfr_sub(out.upper_.get(), upper_.get(), rhs.lower_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::operator*(const Interval& rhs) const {
  const mpfr_prec_t prec = std::max(precision(), rhs.precision());
  Interval out(prec);
  const bool lhs_nonneg = mpfr_sgn(lower_.get()) >= 0;
  const bool rhs_nonneg = mpfr_sgn(rhs.lower_.get()) >= 0;
  if (lhs_nonneg && rhs_nonneg) {
    mpfr_mul(out.lower_.get(), lower_.get(), rhs.lower_.get(), MPFR_RNDD);
    mpfr_mul(out.upper_.get(), upper_.get(), rhs.upper_.get(), MPFR_RNDU);
    return out;
  }
  BigFloat candidate(prec);
  mpfr_srcptr lhs_ends[2] = {lower_.get(), upper_.get()};
  mpfr_srcptr rhs_ends[2] = {rhs.lower_.get(), rhs.upper_.get()};
  bool first = true;
  for (mpfr_srcptr l : lhs_ends) {
    for (mpfr_srcptr r : rhs_ends) {
      mpfr_mul(candidate.get(), l, r, MPFR_RNDD);
      if (first || mpfr_less_p(candidate.get(), out.lower_.get()))
        mpfr_set(out.lower_.get(), candidate.get(), MPFR_RNDD);
      mpfr_mul(candidate.get(), l, r, MPFR_RNDU);
      if (first || mpfr_greater_p(candidate.get(), out.upper_.get()))
        mpfr_set(out.upper_.get(), candidate.get(), MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

Interval Interval::operator/(const Interval& rhs) const {
  if (rhs.contains_zero()) throw Error(ErrorCode::InvalidArgument, "interval division by a range containing zero");
  const mpfr_prec_t prec = std::max(precision(), rhs.precision());
  Interval reciprocal(prec);
  mpfr_ui_div(reciprocal.lower_.get(), 1, rhs.upper_.get(), MPFR_RNDD);
  mpfr_ui_div(reciprocal.upper_.get(), 1, rhs.lower_.get(), MPFR_RNDU);
  return *this * reciprocal;
}

Interval Interval::intersect(const Interval& other) const {
  Interval out(std::max(precision(), other.precision()));
  mpfr_max(out.lower_.get(), lower_.get(), other.lower_.get(), MPFR_RNDD);
  mpfr_min(out.upper_.get(), upper_.get(), other.upper_.get(), MPFR_RNDU);
  if (mpfr_greater_p(out.lower_.get(), out.upper_.get()))
    throw Error(ErrorCode::InvalidArgument, "intersection of disjoint enclosures");
  return out;
}

std::string Interval::to_string(int digits) const {
  auto render = [digits](mpfr_srcptr v, mpfr_rnd_t rnd) {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*R*g", digits, rnd, v);
    std::string text(raw);
    mpfr_free_str(raw);
    return text;
  };
  return "[" + render(lower_.get(), MPFR_RNDD) + ", " + render(upper_.get(), MPFR_RNDU) + "]";
}

bool certainly_less(const Interval& lhs, const Interval& rhs) {
  return mpfr_less_p(lhs.upper().get(), rhs.lower().get()) != 0;
}

}  // namespace betakit
