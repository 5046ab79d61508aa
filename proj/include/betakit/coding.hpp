#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betakit/certified.hpp"
#include "betakit/word.hpp"
#include "json.hpp"

namespace betakit {

/// The pair (alpha, beta) of F(x) = beta x + alpha mod 1 with its top symbol ell.
struct Parameters {
  CertifiedReal alpha;
  CertifiedReal beta;
  int ell = 0;
  bool beta_above_two = false;

  /// Validates 0 <= alpha < 1 and beta > 1 with certified comparisons.
  static Parameters make(CertifiedReal alpha, CertifiedReal beta);
  static Parameters parse(std::string_view alpha, std::string_view beta);

  bool is_exact() const { return alpha.is_exact() && beta.is_exact(); }
  void require_beta_above_two() const;
};

struct OrbitStep {
  Digit digit = 0;
  CertifiedReal next;
  /// beta x + alpha is exactly an integer in [1, ell], i.e. x is a discontinuity.
  bool endpoint_hit = false;
};

/// One application of F with the right-continuous partition.
OrbitStep orbit_step(const CertifiedReal& x, const Parameters& params);

enum class KneadingSide { A, B };

struct KneadingSequence {
  Word digits;
  /// 1-based positions n where the orbit point before digit n sat exactly on a discontinuity.
  std::vector<std::size_t> endpoint_hits;
  /// Detected eventual period: digits[i + period] == digits[i] for i >= preperiod.
  std::optional<std::size_t> period;
  std::size_t preperiod = 0;
  long bits_used = 0;
  bool exact = false;
};

/// Computes up to n certified digits. Fewer are returned only when the precision
/// ceiling is reached; `stalled` then carries the reason.
KneadingSequence kneading_sequence(const Parameters& params, KneadingSide side, std::size_t n,
                                   std::string* stalled = nullptr);

Word kneading_a(const Parameters& params, std::size_t n);
Word kneading_b(const Parameters& params, std::size_t n);

struct KneadingPair {
  Word a;
  Word b;
  std::size_t certified_len = 0;
  int ell = 0;
  bool beta_above_two = false;
  std::vector<std::size_t> endpoint_hits_a;
  std::vector<std::size_t> endpoint_hits_b;
  std::optional<std::size_t> period_a;
  std::optional<std::size_t> period_b;
  std::string alpha_descriptor;
  std::string beta_descriptor;

  /// Pair given directly by digit prefixes, e.g. data read off a picture.
  static KneadingPair from_prefixes(Word a, Word b, int ell, bool beta_above_two = true);

  void require_depth(std::size_t n, std::string_view what) const;
};

KneadingPair compute_kneading(const Parameters& params, std::size_t n);

/// 2^-j for the longest common prefix length j.
double d_metric(const Word& x_prefix, const Word& y_prefix);

std::string describe(const CertifiedReal& value);
nlohmann::json to_json(const KneadingPair& kp);

}  // namespace betakit
