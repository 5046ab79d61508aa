#include "betakit/examples.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "betakit/error.hpp"
#include "betakit/specification.hpp"

namespace betakit {

namespace {

constexpr std::size_t kTargetCache = 20000;

const Word& cached_target() {
  static const Word c = target_c(kTargetCache);
  return c;
}

Digit target_digit(std::size_t n) {
  if (n == 0 || n > kTargetCache) throw Error(ErrorCode::InvalidArgument, "target digit index out of range");
  return cached_target()[n - 1];
}

// sum_{i=1}^{|w|} w_i x^i by Horner.
Interval horner(const Word& w, const Interval& x, mpfr_prec_t prec) {
  Interval acc = Interval::enclose(0L, prec);
  for (std::size_t i = w.size(); i-- > 0;) acc = (acc + Interval::enclose(static_cast<long>(w[i]), prec)) * x;
  return acc;
}

Integer floor_div(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Interval power(const Interval& x, std::size_t k, mpfr_prec_t prec) {
  Interval out = Interval::enclose(1L, prec);
  Interval base = x;
  while (k > 0) {
    if (k & 1U) out = out * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return out;
}

std::size_t terms_for(const Interval& beta, mpfr_prec_t prec) {
  const double lb = std::max(mpfr_get_d(beta.lower().get(), MPFR_RNDD), 1.05);
  return static_cast<std::size_t>(std::ceil(static_cast<double>(prec) / std::log2(lb))) + 8;
}

}  // namespace

EtaSeries EtaSeries::eventually_periodic(Word prefix, Word period, CertifiedReal beta) {
  EtaSeries s;
  s.prefix = std::move(prefix);
  s.period = std::move(period);
  s.beta = std::move(beta);
  return s;
}

EtaSeries EtaSeries::generated(std::function<Digit(std::size_t)> digit, Digit tail_min, Digit tail_max,
                               CertifiedReal beta) {
  if (tail_min > tail_max) throw Error(ErrorCode::InvalidArgument, "tail bounds out of order");
  EtaSeries s;
  s.generator = std::move(digit);
  s.tail_min = tail_min;
  s.tail_max = tail_max;
  s.beta = std::move(beta);
  return s;
}

EtaSeries EtaSeries::word_with_tail(Word digits, Digit tail_min, Digit tail_max, CertifiedReal beta) {
  const std::size_t n = digits.size();
  EtaSeries s = generated([w = std::move(digits)](std::size_t i) { return w[i - 1]; }, tail_min, tail_max,
                          std::move(beta));
  s.finite_terms = n;
  if (n == 0) s.finite_terms = 0, s.generator = [](std::size_t) -> Digit { return 0; };
  return s;
}

Interval eta_enclosure(const EtaSeries& series, const Interval& beta, mpfr_prec_t prec) {
  const Interval one = Interval::enclose(1L, prec);
  const Interval x = one / beta;
  const Interval one_minus_x = one - x;
  Interval sum(prec);
  if (series.is_eventually_periodic()) {
    sum = horner(series.prefix, x, prec);
    if (!series.period.empty()) {
      const Interval xk = power(x, series.prefix.size(), prec);
      const Interval xm = power(x, series.period.size(), prec);
      sum = sum + xk * horner(series.period, x, prec) / (one - xm);
    }
  } else {
    const std::size_t n = series.finite_terms > 0 ? series.finite_terms : terms_for(beta, prec);
    Interval acc = Interval::enclose(0L, prec);
    for (std::size_t i = n; i >= 1; --i) {
      acc = (acc + Interval::enclose(static_cast<long>(series.generator(i)), prec)) * x;
    }
    // sum_{i > n} t x^i with t in [tail_min, tail_max].
    const Interval tail_factor = power(x, n + 1, prec) / one_minus_x;
    const Interval digits = Interval::between(Rational(series.tail_min), Rational(series.tail_max), prec);
    sum = acc + digits * tail_factor;
  }
  return sum - x * x / one_minus_x;
}

CertifiedReal eta_value(const EtaSeries& series) {
  const bool exact_form = series.is_eventually_periodic() && series.beta.is_exact();
  if (exact_form) {
    // Closed form in exact rational arithmetic.
    const Rational b = *series.beta.exact_value();
    const Rational x = 1 / b;
    auto poly = [&](const Word& w) {
      Rational acc = 0;
      for (std::size_t i = w.size(); i-- > 0;) acc = (acc + w[i]) * x;
      return acc;
    };
    Rational xk = 1, xm = 1;
    for (std::size_t i = 0; i < series.prefix.size(); ++i) xk *= x;
    for (std::size_t i = 0; i < series.period.size(); ++i) xm *= x;
    Rational sum = poly(series.prefix);
    if (!series.period.empty()) sum += xk * poly(series.period) / (1 - xm);
    Rational value = sum - x * x / (1 - x);
    value.canonicalize();
    return CertifiedReal::exact(value);
  }
  return CertifiedReal::from_hook(
      [series](mpfr_prec_t prec) { return eta_enclosure(series, series.beta.evaluate(prec + 32), prec + 32); },
      "eta(" + series.prefix.str() + (series.period.empty() ? "" : "(" + series.period.str() + ")") + ")");
}

Word target_c(std::size_t n) {
  Word c;
  c.reserve(n + 2);
  c.push_back(3);
  c.push_back(2);
  for (std::size_t k = 1; c.size() < n; ++k) {
    c.push_back(0);
    for (std::size_t i = 0; i < k; ++i) c.push_back(1);
    c.push_back(2);
  }
  c.truncate(n);
  return c;
}

namespace {

Interval example_residual(const Interval& beta, mpfr_prec_t prec) {
  EtaSeries c = EtaSeries::generated(target_digit, 0, 3, CertifiedReal::exact(3));
  return eta_enclosure(c, beta, prec) - Interval::enclose(1L, prec);
}

}  // namespace

CertifiedReal example_beta() {
  static const CertifiedReal root =
      CertifiedReal::root_of(example_residual, Rational(3), Rational(373, 100), "root of eta(c)=1 on [3, 3.73]");
  return root;
}

ExampleBeta solve_example_beta(double tol, long width_bits) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  ExampleBeta out;
  out.bracket_lower = Rational(3);
  out.bracket_upper = Rational(373, 100);
  const Rational tol_q(tol);
  long bits = width_bits;
  const long max_bits = PrecisionPolicy::current().max_bits;
  for (;;) {
    out.beta = example_beta().refine(bits);
    out.width_bits = bits;
    out.residual = example_residual(out.beta.enclosure(), static_cast<mpfr_prec_t>(bits + 64));
    const Interval band = Interval::between(-tol_q, tol_q, static_cast<mpfr_prec_t>(bits + 64));
    if (band.contains(out.residual)) return out;
    if (bits >= max_bits)
      throw Error(ErrorCode::PrecisionExhausted, "residual of eta(c)=1 stays above the tolerance");
    bits = std::min(bits * 2, max_bits);
  }
}

Parameters example_parameters() {
  const CertifiedReal beta = example_beta();
  return Parameters::make(CertifiedReal::exact(1) / beta, beta);
}

TargetComparison compare_b_with_target(const Parameters& params, std::size_t depth) {
  TargetComparison out;
  out.b_prefix = kneading_b(params, depth);
  const Word c = target_c(depth);
  out.matches = true;
  for (std::size_t i = 0; i < depth; ++i) {
    if (out.b_prefix[i] != c[i]) {
      out.matches = false;
      out.first_mismatch = i + 1;
      break;
    }
  }
  return out;
}

bool ExampleReport::ok() const { return failures().empty(); }

std::vector<std::string> ExampleReport::failures() const {
  std::vector<std::string> out;
  if (!beta_in_bracket) out.emplace_back("beta outside (3, 3.73)");
  if (!ell_is_three) out.emplace_back("alpha + beta outside (3, 4)");
  if (!a_is_zero_one_bar) out.emplace_back("a is not 0 1 1 1 ...");
  if (!b_matches_c) out.emplace_back("b differs from the target sequence");
  if (max_da != 0) out.emplace_back("D(a) is not empty");
  if (!(max_db > max_db_half)) out.emplace_back("D(b) does not grow");
  if (!negative_eta) out.emplace_back("negative eta with first digit above 0");
  if (!large_eta) out.emplace_back("eta above 1 with first digit below 3");
  if (!eta_order) out.emplace_back("eta(2 0 0 ...) not above eta(1 1 1 ...)");
  if (!eta_bounds) out.emplace_back("eta of a shift of c outside [0, 1)");
  return out;
}

ExampleReport verify_example(std::size_t depth, std::uint64_t seed) {
  if (depth < 4) throw Error(ErrorCode::InvalidArgument, "example depth must be at least 4");
  ExampleReport out;
  out.depth = depth;
  const CertifiedReal beta = example_beta().refine(96);
  out.beta_enclosure = beta.enclosure();
  out.residual = example_residual(beta.enclosure(), 160);
  const long max_bits = PrecisionPolicy::current().max_bits;
  out.beta_in_bracket = certified_compare(beta, CertifiedReal::exact(3), max_bits) == ComparisonVerdict::ProvablyGreater &&
                        certified_compare(beta, CertifiedReal::parse("3.73"), max_bits) == ComparisonVerdict::ProvablyLess;

  const Parameters params = example_parameters();
  out.ell_is_three = params.ell == 3;
  const KneadingPair kp = compute_kneading(params, depth);
  out.a_is_zero_one_bar = kp.a[0] == 0;
  for (std::size_t i = 1; i < depth; ++i) out.a_is_zero_one_bar = out.a_is_zero_one_bar && kp.a[i] == 1;
  const Word c = target_c(depth);
  out.b_matches_c = true;
  for (std::size_t i = 0; i < depth; ++i) {
    if (kp.b[i] != c[i]) {
      out.b_matches_c = false;
      out.first_mismatch = i + 1;
      break;
    }
  }
  out.max_da = d_set(kp, DSetKind::Da, depth).max_found;
  out.max_db_half = d_set(kp, DSetKind::Db, depth / 2).max_found;
  out.max_db = d_set(kp, DSetKind::Db, depth).max_found;

  // The first-digit checks run over arbitrary words on {0, ..., 3}: the example's own
  // language forbids 00, so it never produces a negative eta. Each word leans
  // towards one extreme symbol so both tails of eta get sampled, and beta is
  // either beta* or a random rational in the range where the claim is made.
  constexpr mpfr_prec_t kPrec = 128;
  const Interval beta_iv = beta.evaluate(kPrec);
  std::mt19937_64 rng(seed);
  const std::size_t length = 48;
  const Interval zero = Interval::enclose(0L, kPrec);
  const Interval one = Interval::enclose(1L, kPrec);
  for (int sample = 0; sample < 4000; ++sample) {
    const Digit lean = (rng() & 1U) ? 3 : 0;
    Word w;
    for (std::size_t i = 0; i < length; ++i) {
      w.push_back(rng() % 10 < 6 ? lean : static_cast<Digit>(rng() % 4));
    }
    const bool wide = sample % 2 == 1;
    // beta in (2, 4) for the negative side and in (3, 3.73) for the large side.
    const Rational lo = lean == 0 ? Rational(2) : Rational(3);
    const Rational span = lean == 0 ? Rational(2) : Rational(73, 100);
    Rational b_random = lo + span * Rational(static_cast<long>(1 + rng() % 9999), 10000);
    b_random.canonicalize();
    const Interval b_iv = wide ? Interval::enclose(b_random, kPrec) : beta_iv;
    const CertifiedReal b_value = wide ? CertifiedReal::exact(b_random) : beta;
    const Interval eta = eta_enclosure(EtaSeries::word_with_tail(w, 0, 3, b_value), b_iv, kPrec);
    if (certainly_less(eta, zero)) {
      ++out.negative_eta_checked;
      out.negative_eta = out.negative_eta && w[0] == 0;
    }
    const bool in_range = !wide || (b_random > 3 && b_random < Rational(373, 100));
    if (in_range && certainly_less(one, eta)) {
      ++out.large_eta_checked;
      out.large_eta = out.large_eta && w[0] == 3;
    }
  }

  const Interval two_zero = eta_enclosure(EtaSeries::eventually_periodic(Word::parse("2"), {}, beta), beta_iv, kPrec);
  const Interval ones = eta_enclosure(EtaSeries::eventually_periodic({}, Word::parse("1"), beta), beta_iv, kPrec);
  out.eta_order = certainly_less(ones, two_zero);

  out.eta_bounds = true;
  const std::size_t terms = 120;
  for (std::size_t n = 1; n <= depth && out.eta_bounds; ++n) {
    EtaSeries shifted = EtaSeries::generated([n](std::size_t i) { return target_digit(n + i); }, 0, 3, beta);
    shifted.finite_terms = terms;
    const Interval eta = eta_enclosure(shifted, beta_iv, kPrec);
    out.eta_bounds = mpfr_sgn(eta.lower().get()) >= 0 && certainly_less(eta, one);
  }
  return out;
}

Perturbation perturb_to_periodic(const Parameters& params, double tol, std::size_t orbit_budget) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  std::string stalled;
  const KneadingSequence seq = kneading_sequence(params, KneadingSide::A, orbit_budget + 1, &stalled);
  Perturbation out;
  if (seq.exact && seq.period && seq.preperiod == 0) {
    // The orbit of 0 already returns to 0.
    out.alpha_prime = params.alpha;
    out.exact = params.alpha.exact_value();
    out.formula = "alpha";
    out.period = *seq.period;
    out.step = out.period - 1;
    out.epsilon = 0.0;
    out.verified_exact = true;
    out.verified_numeric = true;
    out.kneading_a = seq.digits.prefix(out.period);
    return out;
  }
  const Word& d = seq.digits;
  const std::size_t usable = d.size();
  const bool exact = params.is_exact();
  const auto prec = static_cast<mpfr_prec_t>(256 + 2 * usable);
  const Interval beta_iv = params.beta.evaluate(prec);
  const Interval alpha_iv = params.alpha.evaluate(prec);
  const Interval tol_iv = Interval::enclose(Rational(tol), prec);

  // With D_n = sum_{i<n} d_i beta^(n-1-i) and S_n = 1 + ... + beta^(n-1), the
  // perturbed point x'_n = alpha' S_n - D_n lands on discontinuity j when
  // alpha' = (j + beta D_n) / S_{n+1}.
  Rational dq = 0, sq = 1;
  Interval di = Interval::enclose(0L, prec), si = Interval::enclose(1L, prec);
  std::optional<Interval> best;
  for (std::size_t n = 1; n < usable; ++n) {
    if (exact) {
      dq = dq * *params.beta.exact_value() + d[n - 1];
      sq = sq * *params.beta.exact_value() + 1;
    }
    di = di * beta_iv + Interval::enclose(static_cast<long>(d[n - 1]), prec);
    si = si * beta_iv + Interval::enclose(1L, prec);
    const int j = d[n] + 1;
    if (j > params.ell) continue;
    const Interval alpha_new = (Interval::enclose(static_cast<long>(j), prec) + beta_iv * di) / si;
    const Interval eps = alpha_new - alpha_iv;
    if (!certainly_less(Interval::enclose(0L, prec), eps)) continue;
    if (best && !certainly_less(eps, *best)) continue;
    best = eps;
    if (!certainly_less(eps, tol_iv)) continue;

    // Candidate: check that no earlier symbol changed and that the orbit closes.
    Word period_word = d.prefix(n);
    period_word.push_back(static_cast<Digit>(j));
    CertifiedReal alpha_prime;
    std::optional<Rational> exact_alpha;
    if (exact) {
      Rational q = (Rational(j) + *params.beta.exact_value() * dq) / sq;
      q.canonicalize();
      if (q >= 1) continue;
      exact_alpha = q;
      alpha_prime = CertifiedReal::exact(q);
    } else {
      const Word prefix = d.prefix(n);
      const CertifiedReal b = params.beta;
      alpha_prime = CertifiedReal::from_hook(
          [prefix, j, b](mpfr_prec_t p) {
            const mpfr_prec_t w = p + 64 + 2 * static_cast<mpfr_prec_t>(prefix.size());
            const Interval bi = b.evaluate(w);
            Interval dd = Interval::enclose(0L, w), ss = Interval::enclose(1L, w);
            for (Digit x : prefix) {
              dd = dd * bi + Interval::enclose(static_cast<long>(x), w);
              ss = ss * bi + Interval::enclose(1L, w);
            }
            return (Interval::enclose(static_cast<long>(j), w) + bi * dd) / ss;
          },
          "perturbed alpha");
    }
    Parameters perturbed;
    try {
      perturbed = Parameters::make(alpha_prime, params.beta);
    } catch (const Error&) {
      continue;
    }

    bool exact_ok = false;
    if (exact_alpha) {
      const Rational b = *params.beta.exact_value();
      Rational x = 0;
      exact_ok = true;
      for (std::size_t i = 0; i <= n && exact_ok; ++i) {
        Rational y = b * x + *exact_alpha;
        const Integer fl = floor_div(y);
        if (fl != period_word[i]) exact_ok = false;
        x = y - fl;
        x.canonicalize();
      }
      exact_ok = exact_ok && x == 0;
    }

    // Numeric re-check at no fewer than 256 bits.
    bool numeric_ok = true;
    {
      const auto w = static_cast<mpfr_prec_t>(256 + 4 * n);
      const Interval bi = params.beta.evaluate(w);
      const Interval ai = alpha_prime.evaluate(w);
      Interval x = Interval::enclose(0L, w);
      for (std::size_t i = 0; i < n && numeric_ok; ++i) {
        const Interval y = bi * x + ai;
        Integer fl;
        if (!y.floor_if_determined(fl) || fl != period_word[i]) numeric_ok = false;
        x = y - Interval::enclose(Rational(fl), w);
      }
      numeric_ok = numeric_ok && (bi * x + ai).contains(Rational(j)) && (bi * x + ai).width_at_most(128);
    }
    if (!numeric_ok || (exact && !exact_ok)) continue;

    out.alpha_prime = alpha_prime;
    out.exact = exact_alpha;
    out.period = n + 1;
    out.step = n;
    out.discontinuity = j;
    out.epsilon = eps.midpoint();
    out.verified_exact = exact_ok;
    out.verified_numeric = numeric_ok;
    out.kneading_a = std::move(period_word);
    std::string numerator = std::to_string(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] == 0) continue;
      numerator += " + " + std::to_string(d[i]) + "*beta^" + std::to_string(n - i);
    }
    out.formula = "(" + numerator + ") / (1 + beta + ... + beta^" + std::to_string(n) + ")";
    return out;
  }
  throw Error(ErrorCode::ToleranceUnreachableAtDepth,
              "no periodic perturbation below " + std::to_string(tol) + " within " + std::to_string(usable) +
                  " orbit steps" + (stalled.empty() ? "" : " (" + stalled + ")"));
}

nlohmann::json to_json(const ExampleBeta& beta) {
  return {{"defining_relation", "eta(c)=1"},
          {"bracket", {beta.bracket_lower.get_str(), beta.bracket_upper.get_str()}},
          {"refined_interval", beta.beta.enclosure().to_string(30)},
          {"beta_approx", beta.beta.approx()},
          {"width_bits", beta.width_bits},
          {"residual", beta.residual.to_string(6)}};
}

nlohmann::json to_json(const ExampleReport& r) {
  nlohmann::json j = {{"depth", r.depth},
                      {"beta", r.beta_enclosure.to_string(30)},
                      {"alpha_descriptor", "1/beta"},
                      {"residual", r.residual.to_string(6)},
                      {"beta_in_bracket", r.beta_in_bracket},
                      {"ell_is_three", r.ell_is_three},
                      {"a_is_zero_one_bar", r.a_is_zero_one_bar},
                      {"b_matches_c", r.b_matches_c},
                      {"max_Da", r.max_da},
                      {"max_Db_half", r.max_db_half},
                      {"max_Db", r.max_db},
                      {"lemma_negative_eta", {{"checked", r.negative_eta_checked}, {"holds", r.negative_eta}}},
                      {"lemma_large_eta", {{"checked", r.large_eta_checked}, {"holds", r.large_eta}}},
                      {"lemma_order", r.eta_order},
                      {"eta_shift_bounds", r.eta_bounds},
                      {"ok", r.ok()},
                      {"failures", r.failures()}};
  j["first_mismatch"] = r.first_mismatch ? nlohmann::json(*r.first_mismatch) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Perturbation& p) {
  nlohmann::json j = {{"alpha_prime", p.alpha_prime.enclosure().to_string(30)},
                      {"alpha_prime_approx", p.alpha_prime.approx()},
                      {"formula", p.formula},
                      {"period", p.period},
                      {"step", p.step},
                      {"discontinuity", p.discontinuity},
                      {"epsilon", p.epsilon},
                      {"verified_exact", p.verified_exact},
                      {"verified_numeric", p.verified_numeric},
                      {"kneading_a_period", p.kneading_a.str()}};
  j["exact"] = p.exact ? nlohmann::json(p.exact->get_str()) : nlohmann::json(nullptr);
  return j;
}

}  // namespace betakit
