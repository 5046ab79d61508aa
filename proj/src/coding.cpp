#include "betakit/coding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "betakit/error.hpp"

namespace betakit {

namespace {

long max_bits() { return PrecisionPolicy::current().max_bits; }

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// ceil(s) - 1 for a certified real s, refining until no integer is inside the enclosure.
int top_symbol(const CertifiedReal& sum) {
  if (sum.is_exact()) return static_cast<int>(ceil_of(*sum.exact_value()).get_si()) - 1;
  for (long prec = 64;; prec *= 2) {
    const Interval enclosure = sum.evaluate(prec);
    Integer lo;
    if (enclosure.floor_if_determined(lo) && !enclosure.contains(Rational(lo))) return static_cast<int>(lo.get_si());
    if (prec >= max_bits())
      throw Error(ErrorCode::PrecisionExhausted, "cannot decide ceil(alpha + beta) for " + sum.description());
  }
}

ComparisonVerdict compare_or_throw(const CertifiedReal& x, const CertifiedReal& y, std::string_view what) {
  const ComparisonVerdict verdict = certified_compare(x, y, max_bits());
  if (verdict == ComparisonVerdict::Undetermined)
    throw Error(ErrorCode::PrecisionExhausted, "cannot certify " + std::string(what));
  return verdict;
}

// Digit of y under the chosen side convention, if decided by the enclosure.
std::optional<long> interval_digit(const Interval& y, KneadingSide side) {
  Integer lo, hi;
  if (side == KneadingSide::A) {
    mpfr_get_z(lo.get_mpz_t(), y.lower().get(), MPFR_RNDD);
    mpfr_get_z(hi.get_mpz_t(), y.upper().get(), MPFR_RNDD);
    if (lo != hi) return std::nullopt;
    return lo.get_si();
  }
  mpfr_get_z(lo.get_mpz_t(), y.lower().get(), MPFR_RNDU);
  mpfr_get_z(hi.get_mpz_t(), y.upper().get(), MPFR_RNDU);
  if (lo != hi) return std::nullopt;
  return lo.get_si() - 1;
}

KneadingSequence exact_orbit(const Rational& alpha, const Rational& beta, int ell, KneadingSide side, std::size_t n) {
  KneadingSequence out;
  out.exact = true;
  std::map<Rational, std::size_t> seen;
  std::set<std::size_t> hits;
  Rational x = side == KneadingSide::A ? Rational(0) : Rational(1);
  std::vector<Digit> digits;
  digits.reserve(n);
  while (digits.size() < n) {
    const auto [it, inserted] = seen.emplace(x, digits.size());
    if (!inserted) {
      out.preperiod = it->second;
      out.period = digits.size() - it->second;
      break;
    }
    Rational y = beta * x + alpha;
    y.canonicalize();
    const long digit = side == KneadingSide::A ? floor_of(y).get_si() : ceil_of(y).get_si() - 1;
    if (digit < 0 || digit > ell) throw Error(ErrorCode::InvalidDigit, "orbit digit outside the alphabet");
    if (is_integer(y) && y >= 1) hits.insert(digits.size() + 1);
    digits.push_back(static_cast<Digit>(digit));
    x = y - digit;
    x.canonicalize();
  }
  if (out.period) {
    const std::size_t start = out.preperiod;
    const std::size_t period = *out.period;
    for (std::size_t i = digits.size(); i < n; ++i) {
      const std::size_t source = start + (i - start) % period;
      digits.push_back(digits[source]);
      if (hits.count(source + 1)) hits.insert(i + 1);
    }
  }
  out.digits = Word(std::move(digits));
  out.endpoint_hits.assign(hits.begin(), hits.end());
  return out;
}

// Interval iteration at a fixed working precision; returns the certified digits.
std::vector<Digit> interval_orbit(const Parameters& params, KneadingSide side, std::size_t n, long prec,
                                  std::string& reason) {
  const Interval alpha = params.alpha.evaluate(prec);
  const Interval beta = params.beta.evaluate(prec);
  const Interval unit = Interval::between(Rational(0), Rational(1), prec);
  Interval x = Interval::enclose(side == KneadingSide::A ? 0L : 1L, prec);
  std::vector<Digit> digits;
  digits.reserve(n);
  while (digits.size() < n) {
    const Interval y = beta * x + alpha;
    const auto digit = interval_digit(y, side);
    if (!digit) {
      reason = "digit " + std::to_string(digits.size() + 1) + " straddles a partition endpoint at " +
               std::to_string(prec) + " bits";
      break;
    }
    if (*digit < 0 || *digit > params.ell) throw Error(ErrorCode::InvalidDigit, "orbit digit outside the alphabet");
    digits.push_back(static_cast<Digit>(*digit));
    x = (y - Interval::enclose(*digit, prec)).intersect(unit);
  }
  return digits;
}

}  // namespace

Parameters Parameters::make(CertifiedReal alpha, CertifiedReal beta) {
  const CertifiedReal zero = CertifiedReal::exact(0);
  const CertifiedReal one = CertifiedReal::exact(1);
  if (compare_or_throw(alpha, zero, "alpha >= 0") == ComparisonVerdict::ProvablyLess)
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1)");
  if (compare_or_throw(alpha, one, "alpha < 1") != ComparisonVerdict::ProvablyLess)
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1)");
  if (compare_or_throw(beta, one, "beta > 1") != ComparisonVerdict::ProvablyGreater)
    throw Error(ErrorCode::InvalidArgument, "beta must exceed 1");
  Parameters out{std::move(alpha), std::move(beta), 0, false};
  out.ell = top_symbol(out.alpha + out.beta);
  out.beta_above_two =
      certified_compare(out.beta, CertifiedReal::exact(2), max_bits()) == ComparisonVerdict::ProvablyGreater;
  return out;
}

Parameters Parameters::parse(std::string_view alpha, std::string_view beta) {
  return make(CertifiedReal::parse(alpha), CertifiedReal::parse(beta));
}

void Parameters::require_beta_above_two() const {
  if (!beta_above_two) throw Error(ErrorCode::PreconditionViolated, "beta > 2 is not certified");
}

OrbitStep orbit_step(const CertifiedReal& x, const Parameters& params) {
  const long ceiling = max_bits();
  const ComparisonVerdict low = certified_compare(x, CertifiedReal::exact(0), ceiling);
  const ComparisonVerdict high = certified_compare(x, CertifiedReal::exact(1), ceiling);
  if (low == ComparisonVerdict::ProvablyLess || low == ComparisonVerdict::Undetermined ||
      high != ComparisonVerdict::ProvablyLess)
    throw Error(ErrorCode::PreconditionViolated, "orbit_step needs 0 <= x < 1 certifiably");
  const CertifiedReal y = params.beta * x + params.alpha;
  OrbitStep out;
  if (y.is_exact()) {
    const Rational& value = *y.exact_value();
    const long digit = floor_of(value).get_si();
    out.digit = static_cast<Digit>(digit);
    out.endpoint_hit = is_integer(value) && value >= 1;
    out.next = CertifiedReal::exact(value - digit);
    return out;
  }
  for (long prec = 64;; prec = std::min(prec * 2, ceiling)) {
    if (const auto digit = interval_digit(y.evaluate(prec), KneadingSide::A)) {
      out.digit = static_cast<Digit>(*digit);
      out.next = y - CertifiedReal::exact(*digit);
      return out;
    }
    if (prec >= ceiling)
      throw Error(ErrorCode::DigitUndetermined, "beta x + alpha straddles a partition endpoint at " +
                                                    std::to_string(ceiling) + " bits");
  }
}

KneadingSequence kneading_sequence(const Parameters& params, KneadingSide side, std::size_t n, std::string* stalled) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "kneading length must be >= 1");
  if (params.is_exact()) return exact_orbit(*params.alpha.exact_value(), *params.beta.exact_value(), params.ell, side, n);
  const long ceiling = max_bits();
  const double growth = std::log2(std::max(params.beta.approx(), 1.0));
  long prec = std::max<long>(PrecisionPolicy::current().default_bits,
                             static_cast<long>(std::ceil(growth * static_cast<double>(n))) + 64);
  prec = std::min(prec, ceiling);
  KneadingSequence out;
  for (;;) {
    std::string reason;
    std::vector<Digit> digits = interval_orbit(params, side, n, prec, reason);
    const bool done = digits.size() == n;
    if (done || prec >= ceiling) {
      out.digits = Word(std::move(digits));
      out.bits_used = prec;
      if (!done && stalled != nullptr) *stalled = reason;
      return out;
    }
    prec = std::min(prec * 2, ceiling);
  }
}

namespace {
Word certified_digits(const Parameters& params, KneadingSide side, std::size_t n) {
  std::string reason;
  KneadingSequence seq = kneading_sequence(params, side, n, &reason);
  if (seq.digits.size() < n) throw Error(ErrorCode::PrecisionExhausted, reason);
  return seq.digits;
}
}  // namespace

Word kneading_a(const Parameters& params, std::size_t n) { return certified_digits(params, KneadingSide::A, n); }
Word kneading_b(const Parameters& params, std::size_t n) { return certified_digits(params, KneadingSide::B, n); }

KneadingPair KneadingPair::from_prefixes(Word a, Word b, int ell, bool beta_above_two) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "kneading prefixes must be nonempty");
  if (a.max_digit() > ell || b.max_digit() > ell) throw Error(ErrorCode::InvalidDigit, "kneading digit exceeds ell");
  if (a[0] != 0) throw Error(ErrorCode::InvalidArgument, "a must start with 0");
  if (b[0] != ell) throw Error(ErrorCode::InvalidArgument, "b must start with ell");
  KneadingPair kp;
  kp.certified_len = std::min(a.size(), b.size());
  kp.a = std::move(a);
  kp.b = std::move(b);
  kp.ell = ell;
  kp.beta_above_two = beta_above_two;
  kp.alpha_descriptor = "given";
  kp.beta_descriptor = "given";
  return kp;
}

void KneadingPair::require_depth(std::size_t n, std::string_view what) const {
  if (certified_len < n)
    throw Error(ErrorCode::InsufficientKneadingDepth, std::string(what) + " needs " + std::to_string(n) +
                                                          " kneading digits, only " + std::to_string(certified_len) +
                                                          " are certified");
}

KneadingPair compute_kneading(const Parameters& params, std::size_t n) {
  const KneadingSequence a = kneading_sequence(params, KneadingSide::A, n);
  const KneadingSequence b = kneading_sequence(params, KneadingSide::B, n);
  KneadingPair kp;
  kp.a = a.digits;
  kp.b = b.digits;
  kp.certified_len = std::min(a.digits.size(), b.digits.size());
  kp.ell = params.ell;
  kp.beta_above_two = params.beta_above_two;
  kp.endpoint_hits_a = a.endpoint_hits;
  kp.endpoint_hits_b = b.endpoint_hits;
  kp.period_a = a.period;
  kp.period_b = b.period;
  kp.alpha_descriptor = describe(params.alpha);
  kp.beta_descriptor = describe(params.beta);
  return kp;
}

double d_metric(const Word& x_prefix, const Word& y_prefix) {
  const std::size_t n = std::min(x_prefix.size(), y_prefix.size());
  for (std::size_t j = 0; j < n; ++j) {
    if (x_prefix[j] != y_prefix[j]) return std::ldexp(1.0, -static_cast<int>(j));
  }
  throw Error(ErrorCode::IndistinguishableAtDepth,
              "prefixes agree on all " + std::to_string(n) + " compared symbols");
}

std::string describe(const CertifiedReal& value) { return value.description(); }

nlohmann::json to_json(const KneadingPair& kp) {
  nlohmann::json out;
  out["alpha"] = kp.alpha_descriptor;
  out["beta"] = kp.beta_descriptor;
  out["ell"] = kp.ell;
  out["a_prefix"] = kp.a.str();
  out["b_prefix"] = kp.b.str();
  out["certified_len"] = kp.certified_len;
  out["endpoint_hits"] = {{"a", kp.endpoint_hits_a}, {"b", kp.endpoint_hits_b}};
  out["endpoint_convention"] = "right-continuous";
  out["beta_above_two"] = kp.beta_above_two;
  out["period_a"] = kp.period_a ? nlohmann::json(*kp.period_a) : nlohmann::json(nullptr);
  out["period_b"] = kp.period_b ? nlohmann::json(*kp.period_b) : nlohmann::json(nullptr);
  return out;
}

}  // namespace betakit
