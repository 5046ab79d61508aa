#include "betakit/certified.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <mutex>
#include <utility>

#include "betakit/error.hpp"

namespace betakit {

PrecisionPolicy PrecisionPolicy::current() {
  PrecisionPolicy policy;
  if (const char* env = std::getenv("BETAKIT_MAX_BITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 64) policy.max_bits = value;
  }
  return policy;
}

namespace detail {

class Node {
 public:
  Node(std::optional<Rational> exact, std::string description)
      : exact_(std::move(exact)), description_(std::move(description)) {}
  virtual ~Node() = default;

  virtual Interval eval(mpfr_prec_t precision) const = 0;

  const std::optional<Rational>& exact() const noexcept { return exact_; }
  const std::string& description() const noexcept { return description_; }

 private:
  std::optional<Rational> exact_;
  std::string description_;
};

namespace {

class ConstNode final : public Node {
 public:
  ConstNode(Rational value, std::string description) : Node(value, std::move(description)), value_(value) {}
  Interval eval(mpfr_prec_t precision) const override { return Interval::enclose(value_, precision); }

 private:
  Rational value_;
};

class NegNode final : public Node {
 public:
  explicit NegNode(std::shared_ptr<const Node> operand)
      : Node(std::nullopt, "-(" + operand->description() + ")"), operand_(std::move(operand)) {}
  Interval eval(mpfr_prec_t precision) const override { return -operand_->eval(precision); }

 private:
  std::shared_ptr<const Node> operand_;
};

enum class BinaryOp { Add, Sub, Mul, Div };

char symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

Interval apply(BinaryOp op, const Interval& lhs, const Interval& rhs) {
  switch (op) {
    case BinaryOp::Add: return lhs + rhs;
    case BinaryOp::Sub: return lhs - rhs;
    case BinaryOp::Mul: return lhs * rhs;
    case BinaryOp::Div: return lhs / rhs;
  }
  return lhs;
}

class BinaryNode final : public Node {
 public:
  BinaryNode(BinaryOp op, std::shared_ptr<const Node> lhs, std::shared_ptr<const Node> rhs)
      : Node(std::nullopt, "(" + lhs->description() + " " + symbol(op) + " " + rhs->description() + ")"),
        op_(op),
        lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}

  Interval eval(mpfr_prec_t precision) const override {
    return apply(op_, lhs_->eval(precision), rhs_->eval(precision));
  }

 private:
  BinaryOp op_;
  std::shared_ptr<const Node> lhs_;
  std::shared_ptr<const Node> rhs_;
};

class HookNode final : public Node {
 public:
  HookNode(std::function<Interval(mpfr_prec_t)> hook, std::string description)
      : Node(std::nullopt, std::move(description)), hook_(std::move(hook)) {}
  Interval eval(mpfr_prec_t precision) const override { return hook_(precision); }

 private:
  std::function<Interval(mpfr_prec_t)> hook_;
};

// Sign of f at a rational point, escalating precision; 0 means undetermined.
int sign_at(const IntervalFunction& function, const Rational& point, long bits, long max_bits) {
  for (long prec = std::min(bits, max_bits);; prec = std::min(prec * 2, max_bits)) {
    const Interval value = function(Interval::enclose(point, prec), prec);
    if (mpfr_sgn(value.lower().get()) > 0) return 1;
    if (mpfr_sgn(value.upper().get()) < 0) return -1;
    if (prec >= max_bits) return 0;
  }
}

class RootNode final : public Node {
 public:
  RootNode(IntervalFunction function, Rational lower, Rational upper, std::string description)
      : Node(std::nullopt, std::move(description)),
        function_(std::move(function)),
        lower_(std::move(lower)),
        upper_(std::move(upper)) {
    const long max_bits = PrecisionPolicy::current().max_bits;
    const int lo_sign = sign_at(function_, lower_, 128, max_bits);
    const int hi_sign = sign_at(function_, upper_, 128, max_bits);
    if (lo_sign == 0 || hi_sign == 0 || lo_sign == hi_sign)
      throw Error(ErrorCode::BracketFailure,
                  "no certified sign change on the bracket for " + this->description());
    lower_sign_ = lo_sign;
  }

  Interval eval(mpfr_prec_t precision) const override {
    std::lock_guard lock(mutex_);
    narrow(precision);
    return Interval::between(lower_, upper_, precision);
  }

 private:
  // Caller holds the mutex. Shrinks the bracket until its width is <= 2^-bits.
  void narrow(long bits) const {
    const long max_bits = PrecisionPolicy::current().max_bits;
    Rational target;
    mpq_set_ui(target.get_mpq_t(), 1, 1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    const long work = bits + 64;
    while (upper_ - lower_ > target) {
      const Rational width = upper_ - lower_;
      const Rational mid = lower_ + width / 2;
      const int s = sign_at(function_, mid, work, max_bits);
      if (s == lower_sign_) {
        lower_ = mid;
      } else if (s == -lower_sign_) {
        upper_ = mid;
      } else {
        // The root sits too close to the midpoint; split around it instead.
        const Rational left = lower_ + width * Rational(3, 8);
        const Rational right = lower_ + width * Rational(5, 8);
        const int sl = sign_at(function_, left, work, max_bits);
        const int sr = sign_at(function_, right, work, max_bits);
        if (sl == lower_sign_ && sr == -lower_sign_) {
          lower_ = left;
          upper_ = right;
        } else {
          throw Error(ErrorCode::PrecisionExhausted,
                      "bisection stalled for " + description() + " at " + std::to_string(max_bits) + " bits");
        }
      }
      lower_.canonicalize();
      upper_.canonicalize();
    }
  }

  IntervalFunction function_;
  mutable std::mutex mutex_;
  mutable Rational lower_;
  mutable Rational upper_;
  int lower_sign_ = 0;
};

std::string rational_text(const Rational& value) { return value.get_str(); }

Integer pow10(unsigned long exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      ++scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const std::string rest(text.substr(pos));
    char* end = nullptr;
    exponent = std::strtol(rest.c_str(), &end, 10);
    if (rest.empty() || *end != '\0') throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(text) + "'");
    pos = text.size();
  }
  if (pos != text.size()) throw Error(ErrorCode::ParseError, "trailing characters in '" + std::string(text) + "'");
  Rational value(Integer(digits, 10));
  const long shift = exponent - scale;
  if (shift >= 0) {
    value *= Rational(pow10(static_cast<unsigned long>(shift)));
  } else {
    value /= Rational(pow10(static_cast<unsigned long>(-shift)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::shared_ptr<const Node> make_const(const Rational& value, std::string description) {
  return std::make_shared<ConstNode>(value, std::move(description));
}

}  // namespace
}  // namespace detail

namespace {
constexpr long kInitialGuard = 32;
}

CertifiedReal::CertifiedReal() : CertifiedReal(detail::make_const(Rational(0), "0")) {}

CertifiedReal::CertifiedReal(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {
  const long bits = PrecisionPolicy::current().default_bits;
  enclosure_ = node_->eval(bits + kInitialGuard);
  precision_bits_ = std::max(0L, enclosure_.accuracy_bits());
}

CertifiedReal::CertifiedReal(std::shared_ptr<const detail::Node> node, Interval enclosure, long precision_bits)
    : node_(std::move(node)), enclosure_(std::move(enclosure)), precision_bits_(precision_bits) {}

CertifiedReal CertifiedReal::exact(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return CertifiedReal(detail::make_const(canonical, detail::rational_text(canonical)));
}

CertifiedReal CertifiedReal::parse(std::string_view text) {
  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = detail::parse_decimal(text.substr(0, slash));
    const Rational den = detail::parse_decimal(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    value = num / den;
  } else {
    value = detail::parse_decimal(text);
  }
  value.canonicalize();
  return CertifiedReal(detail::make_const(value, std::string(text)));
}

CertifiedReal CertifiedReal::from_hook(std::function<Interval(mpfr_prec_t)> hook, std::string description) {
  return CertifiedReal(std::make_shared<detail::HookNode>(std::move(hook), std::move(description)));
}

CertifiedReal CertifiedReal::root_of(IntervalFunction function, const Rational& lower, const Rational& upper,
                                     std::string description) {
  if (!(lower < upper)) throw Error(ErrorCode::InvalidArgument, "root bracket must satisfy lower < upper");
  return CertifiedReal(std::make_shared<detail::RootNode>(std::move(function), lower, upper, std::move(description)));
}

const std::optional<Rational>& CertifiedReal::exact_value() const { return node_->exact(); }

const std::string& CertifiedReal::description() const { return node_->description(); }

Interval CertifiedReal::evaluate(mpfr_prec_t working_precision) const {
  return node_->eval(working_precision).intersect(enclosure_);
}

CertifiedReal CertifiedReal::refine(long target_bits) const {
  if (target_bits < 1) throw Error(ErrorCode::InvalidArgument, "refine target must be >= 1 bit");
  if (precision_bits_ >= target_bits && enclosure_.width_at_most(target_bits)) return *this;
  const long max_bits = PrecisionPolicy::current().max_bits;
  long work = std::min(target_bits + kInitialGuard, max_bits);
  if (is_exact()) {
    // Rational enclosures only need enough bits to cover the integer part.
    const long magnitude = static_cast<long>(mpz_sizeinbase(exact_value()->get_num_mpz_t(), 2));
    work = std::max(work, target_bits + magnitude + 2);
  }
  for (;;) {
    Interval fresh = node_->eval(work);
    if (fresh.width_at_most(target_bits)) {
      return CertifiedReal(node_, fresh.intersect(enclosure_), target_bits);
    }
    if (work >= max_bits && !is_exact()) {
      throw Error(ErrorCode::PrecisionExhausted,
                  "could not reach " + std::to_string(target_bits) + " bits for " + description() + " within " +
                      std::to_string(max_bits) + " working bits");
    }
    work = is_exact() ? work * 2 : std::min(work * 2, max_bits);
  }
}

CertifiedReal CertifiedReal::operator-() const {
  if (is_exact()) return exact(-*exact_value());
  auto node = std::make_shared<detail::NegNode>(node_);
  return CertifiedReal(node, -enclosure_, precision_bits_);
}

CertifiedReal CertifiedReal::combine(char op, const CertifiedReal& lhs, const CertifiedReal& rhs) {
  using detail::BinaryOp;
  const BinaryOp kind = op == '+' ? BinaryOp::Add : op == '-' ? BinaryOp::Sub : op == '*' ? BinaryOp::Mul : BinaryOp::Div;
  if (lhs.is_exact() && rhs.is_exact()) {
    const Rational& l = *lhs.exact_value();
    const Rational& r = *rhs.exact_value();
    if (kind == BinaryOp::Div && r == 0) throw Error(ErrorCode::InvalidArgument, "division by exact zero");
    Rational value;
    switch (kind) {
      case BinaryOp::Add: value = l + r; break;
      case BinaryOp::Sub: value = l - r; break;
      case BinaryOp::Mul: value = l * r; break;
      case BinaryOp::Div: value = l / r; break;
    }
    return exact(value);
  }
  Interval right = rhs.enclosure_;
  CertifiedReal divisor = rhs;
  if (kind == BinaryOp::Div && right.contains_zero()) {
    // Tighten the divisor until it is certifiably away from zero.
    const long max_bits = PrecisionPolicy::current().max_bits;
    for (long bits = std::max(64L, rhs.precision_bits_ * 2); right.contains_zero(); bits *= 2) {
      if (bits > max_bits) throw Error(ErrorCode::PrecisionExhausted, "divisor not separated from zero");
      divisor = rhs.refine(bits);
      right = divisor.enclosure_;
    }
  }
  auto node = std::make_shared<detail::BinaryNode>(kind, lhs.node_, divisor.node_);
  Interval enclosure = detail::apply(kind, lhs.enclosure_, right);
  const long bits = std::max(0L, enclosure.accuracy_bits());
  return CertifiedReal(std::move(node), std::move(enclosure), bits);
}

CertifiedReal operator+(const CertifiedReal& lhs, const CertifiedReal& rhs) { return CertifiedReal::combine('+', lhs, rhs); }
CertifiedReal operator-(const CertifiedReal& lhs, const CertifiedReal& rhs) { return CertifiedReal::combine('-', lhs, rhs); }
CertifiedReal operator*(const CertifiedReal& lhs, const CertifiedReal& rhs) { return CertifiedReal::combine('*', lhs, rhs); }
CertifiedReal operator/(const CertifiedReal& lhs, const CertifiedReal& rhs) { return CertifiedReal::combine('/', lhs, rhs); }

std::string_view to_string(ComparisonVerdict verdict) noexcept {
  switch (verdict) {
    case ComparisonVerdict::ProvablyLess: return "ProvablyLess";
    case ComparisonVerdict::ProvablyGreater: return "ProvablyGreater";
    case ComparisonVerdict::ProvablyEqual: return "ProvablyEqual";
    case ComparisonVerdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

ComparisonVerdict certified_compare(const CertifiedReal& x, const CertifiedReal& y, long max_bits) {
  if (x.is_exact() && y.is_exact()) {
    const int c = cmp(*x.exact_value(), *y.exact_value());
    return c < 0 ? ComparisonVerdict::ProvablyLess
                 : c > 0 ? ComparisonVerdict::ProvablyGreater : ComparisonVerdict::ProvablyEqual;
  }
  for (long prec = std::min(64L, max_bits);; prec = std::min(prec * 2, max_bits)) {
    const Interval a = x.evaluate(prec);
    const Interval b = y.evaluate(prec);
    if (certainly_less(a, b)) return ComparisonVerdict::ProvablyLess;
    if (certainly_less(b, a)) return ComparisonVerdict::ProvablyGreater;
    if (a.is_point() && b.is_point() && mpfr_equal_p(a.lower().get(), b.lower().get()))
      return ComparisonVerdict::ProvablyEqual;
    if (prec >= max_bits) return ComparisonVerdict::Undetermined;
  }
}

}  // namespace betakit
