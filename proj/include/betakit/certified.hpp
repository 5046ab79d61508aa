#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "betakit/interval.hpp"

namespace betakit {

/// Working-precision policy. The ceiling honours BETAKIT_MAX_BITS when set.
struct PrecisionPolicy {
  long default_bits = 128;
  long max_bits = 4096;

  static PrecisionPolicy current();
};

namespace detail {
class Node;
}

/// Enclosure of f(x) for every x in the argument interval, computed at the
/// requested working precision.
using IntervalFunction = std::function<Interval(const Interval&, mpfr_prec_t)>;

/// A real number carried as a lazily refinable expression together with its
/// current dyadic enclosure. Values are immutable; refine() returns a new one.
class CertifiedReal {
 public:
  CertifiedReal();

  static CertifiedReal exact(const Rational& value);
  /// Decimal literal ("0.25", "-3", "1.5e-2") or fraction ("1/3"), parsed exactly.
  static CertifiedReal parse(std::string_view text);
  /// Value given only through an enclosure hook; never reports an exact value.
  static CertifiedReal from_hook(std::function<Interval(mpfr_prec_t)> hook, std::string description);
  /// Root of a continuous function that changes sign on [lower, upper], located by
  /// certified bisection. The function must have a single root in the bracket.
  static CertifiedReal root_of(IntervalFunction function, const Rational& lower, const Rational& upper,
                               std::string description);

  friend CertifiedReal operator+(const CertifiedReal& lhs, const CertifiedReal& rhs);
  friend CertifiedReal operator-(const CertifiedReal& lhs, const CertifiedReal& rhs);
  friend CertifiedReal operator*(const CertifiedReal& lhs, const CertifiedReal& rhs);
  friend CertifiedReal operator/(const CertifiedReal& lhs, const CertifiedReal& rhs);
  CertifiedReal operator-() const;

  /// Set when the value is a known rational (constant folding of exact operands).
  const std::optional<Rational>& exact_value() const;
  bool is_exact() const { return exact_value().has_value(); }

  const Interval& enclosure() const noexcept { return enclosure_; }
  long precision_bits() const noexcept { return precision_bits_; }

  /// New value with width <= 2^-target_bits. Never widens the enclosure.
  CertifiedReal refine(long target_bits) const;
  /// Fresh enclosure computed at the given working precision.
  Interval evaluate(mpfr_prec_t working_precision) const;

  const std::string& description() const;
  double approx() const { return enclosure_.midpoint(); }

 private:
  explicit CertifiedReal(std::shared_ptr<const detail::Node> node);
  static CertifiedReal combine(char op, const CertifiedReal& lhs, const CertifiedReal& rhs);
  CertifiedReal(std::shared_ptr<const detail::Node> node, Interval enclosure, long precision_bits);

  std::shared_ptr<const detail::Node> node_;
  Interval enclosure_;
  long precision_bits_ = 0;
};

enum class ComparisonVerdict { ProvablyLess, ProvablyGreater, ProvablyEqual, Undetermined };

std::string_view to_string(ComparisonVerdict verdict) noexcept;

/// Sound three-way comparison. Undetermined only once max_bits is reached.
ComparisonVerdict certified_compare(const CertifiedReal& x, const CertifiedReal& y, long max_bits);

}  // namespace betakit
