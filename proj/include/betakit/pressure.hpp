#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "betakit/coding.hpp"
#include "betakit/graph.hpp"
#include "betakit/word.hpp"
#include "json.hpp"

namespace betakit {

/// Locally constant potential: phi(x) depends on x_1 ... x_r only.
class Potential {
 public:
  /// Tabulates fn on every word of length r over {0, ..., ell}.
  static Potential from_function(std::size_t range, int ell, const std::function<double(const Word&)>& fn);
  static Potential constant(double value, int ell);
  /// {"range": r, "values": {"<word>": number}}; must cover every word of L_r.
  static Potential from_json(const nlohmann::json& spec, const KneadingPair& kp);

  std::size_t range() const noexcept { return range_; }
  int ell() const noexcept { return ell_; }
  /// Value on a window of exactly `range` symbols.
  double operator()(std::span<const Digit> window) const;
  bool defined(std::span<const Digit> window) const;

  double min_value() const noexcept { return min_; }
  double max_value() const noexcept { return max_; }
  double sup_norm() const noexcept { return std::max(std::abs(min_), std::abs(max_)); }

  Potential shifted(double c) const;
  /// Throws InvalidArgument naming the first word of L_r without a value.
  void validate(const KneadingPair& kp) const;
  nlohmann::json to_json() const;

 private:
  Potential(std::size_t range, int ell);
  std::size_t index(std::span<const Digit> window) const;
  void refresh_bounds();

  std::size_t range_ = 1;
  int ell_ = 0;
  std::vector<double> table_;  // NaN marks a missing entry
  double min_ = 0.0;
  double max_ = 0.0;
};

double birkhoff_sum(const Word& x_prefix, std::size_t n, const Potential& phi);

/// max of S_{|w|} phi over the cylinder [w].
double sup_on_cylinder(const Word& w, const Potential& phi, const KneadingPair& kp);

struct FullLanguage {};
struct BPrefixes {};
struct GM {
  std::size_t m = 0;
};
using WordSubset = std::variant<FullLanguage, BPrefixes, GM>;

std::string describe(const WordSubset& subset);

/// log Lambda_n(phi, H). The budget bounds the number of dynamic-programming states.
double log_partition_sum(std::size_t n, const Potential& phi, const KneadingPair& kp, const WordSubset& subset,
                         std::size_t budget = 50'000'000);
double partition_sum(std::size_t n, const Potential& phi, const KneadingPair& kp, const WordSubset& subset,
                     std::size_t budget = 50'000'000);

struct PressureRow {
  std::size_t n = 0;
  double log_lambda = 0.0;
  double rate = 0.0;
};

struct SpectralEstimate {
  std::size_t depth = 0;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t states = 0;
  std::size_t components = 0;
  std::size_t dominant_component_size = 0;
  double dominant_component_value = 0.0;
};

struct PressureEstimate {
  std::vector<PressureRow> per_n;
  std::optional<SpectralEstimate> spectral;
  std::string method;
};

PressureEstimate pressure_by_counting(const Potential& phi, const KneadingPair& kp, std::size_t n_max,
                                      const WordSubset& subset = FullLanguage{}, std::size_t budget = 50'000'000);

struct TransferOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
};

/// Leading eigenvalue of the r-block transfer operator on the truncated graph.
/// Edges leaving the truncation are sent back to the root.
SpectralEstimate transfer_pressure_report(const HofbauerGraph& g, const Potential& phi, TransferOptions options = {});
double transfer_pressure(const HofbauerGraph& g, const Potential& phi, TransferOptions options = {});

double bowen_constant(const Potential& phi);

struct Ct3Margin {
  std::size_t n = 0;
  double pressure = 0.0;
  double orbit_average = 0.0;
  double margin = 0.0;
  double v = 0.0;
  double w = 0.0;
};

Ct3Margin ct3_margin(const Potential& phi, const KneadingPair& kp, const HofbauerGraph& g, std::size_t n);

std::string to_csv(const PressureEstimate& estimate);
nlohmann::json to_json(const PressureEstimate& estimate);
nlohmann::json to_json(const Ct3Margin& margin);

}  // namespace betakit
