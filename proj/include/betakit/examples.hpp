#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "betakit/certified.hpp"
#include "betakit/coding.hpp"
#include "betakit/word.hpp"
#include "json.hpp"

namespace betakit {

/// Digit sequence d together with beta for eta(d) = sum_n (d_n - 1/beta) / beta^n.
/// Either eventually periodic (prefix, then period repeated; an empty period means
/// trailing zeros) or generated digit by digit with known bounds on the tail.
struct EtaSeries {
  Word prefix;
  Word period;
  std::function<Digit(std::size_t)> generator;  // 1-based index
  Digit tail_min = 0;
  Digit tail_max = 0;
  /// Number of generated digits summed exactly; 0 means chosen from the precision.
  std::size_t finite_terms = 0;
  CertifiedReal beta;

  static EtaSeries eventually_periodic(Word prefix, Word period, CertifiedReal beta);
  static EtaSeries generated(std::function<Digit(std::size_t)> digit, Digit tail_min, Digit tail_max,
                             CertifiedReal beta);
  /// Finite word followed by an unknown tail with symbols in [tail_min, tail_max].
  static EtaSeries word_with_tail(Word digits, Digit tail_min, Digit tail_max, CertifiedReal beta);

  bool is_eventually_periodic() const { return !generator; }
};

/// Enclosure of eta(d) for every beta in the given interval.
Interval eta_enclosure(const EtaSeries& series, const Interval& beta, mpfr_prec_t precision);
CertifiedReal eta_value(const EtaSeries& series);

/// First n symbols of 32 0 1 2 0 11 2 0 111 2 ...
Word target_c(std::size_t n);

struct ExampleBeta {
  CertifiedReal beta;
  Rational bracket_lower;
  Rational bracket_upper;
  long width_bits = 0;
  /// Enclosure of eta_beta(c) - 1 over the refined beta interval.
  Interval residual;
};

/// beta* in (3, 3.73) with eta_{beta*}(c) = 1, carried as a bisection root.
ExampleBeta solve_example_beta(double tol, long width_bits = 80);
CertifiedReal example_beta();
/// Parameters (1 / beta*, beta*).
Parameters example_parameters();

struct ExampleReport {
  bool beta_in_bracket = false;
  bool ell_is_three = false;
  bool a_is_zero_one_bar = false;
  bool b_matches_c = false;
  std::optional<std::size_t> first_mismatch;
  std::size_t max_da = 0;
  std::size_t max_db_half = 0;
  std::size_t max_db = 0;
  std::size_t negative_eta_checked = 0;
  std::size_t large_eta_checked = 0;
  bool negative_eta = true;
  bool large_eta = true;
  bool eta_order = false;
  bool eta_bounds = false;
  std::size_t depth = 0;
  Interval beta_enclosure;
  Interval residual;

  bool ok() const;
  std::vector<std::string> failures() const;
};

ExampleReport verify_example(std::size_t depth, std::uint64_t seed = 5489);

struct TargetComparison {
  Word b_prefix;
  bool matches = false;
  std::optional<std::size_t> first_mismatch;  // 1-based
};

/// Compares kneading_b against the target sequence digit by digit.
TargetComparison compare_b_with_target(const Parameters& params, std::size_t depth);

struct Perturbation {
  CertifiedReal alpha_prime;
  /// alpha' = (j + sum_i d_i beta^(n - i)) / (1 + beta + ... + beta^n).
  std::string formula;
  std::optional<Rational> exact;
  std::size_t period = 1;
  std::size_t step = 0;  // index n of the orbit point moved onto a discontinuity
  int discontinuity = 0;
  double epsilon = 0.0;
  bool verified_exact = false;
  bool verified_numeric = false;
  Word kneading_a;  // periodic kneading of the perturbed map, one period
};

Perturbation perturb_to_periodic(const Parameters& params, double tol, std::size_t orbit_budget = 400);

nlohmann::json to_json(const ExampleBeta& beta);
nlohmann::json to_json(const ExampleReport& report);
nlohmann::json to_json(const Perturbation& perturbation);

}  // namespace betakit
