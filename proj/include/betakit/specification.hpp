#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <optional>
#include <utility>
#include <vector>

#include "betakit/coding.hpp"
#include "betakit/graph.hpp"
#include "json.hpp"

namespace betakit {

enum class DSetKind { Da, Db };

struct DSetWitness {
  std::size_t n = 0;
  std::size_t j = 0;  // 1-based offset of the occurrence
};

struct DSetReport {
  DSetKind which = DSetKind::Da;
  std::vector<DSetWitness> found;  // sorted by n
  std::size_t scan_depth = 0;
  std::size_t max_found = 0;
};

/// D(a) collects n with b_1^n occurring in a; D(b) collects n with a_1^n occurring in b.
DSetReport d_set(const KneadingPair& kp, DSetKind which, std::size_t scan_depth);

enum class SpecOutcome { SpecifiedAtDepth, NotSpecifiedAtDepth, Inconclusive };
std::string_view to_string(SpecOutcome outcome) noexcept;

enum class DSetTrend { Stable, Growing, Unclear };
std::string_view to_string(DSetTrend trend) noexcept;

struct SpecVerdict {
  SpecOutcome verdict = SpecOutcome::Inconclusive;
  std::optional<std::size_t> tau_bound;
  DSetReport da;
  DSetReport db;
  /// max D at scan_depth / 4, / 2 and the full depth.
  std::array<std::size_t, 3> da_checkpoints{};
  std::array<std::size_t, 3> db_checkpoints{};
  DSetTrend da_trend = DSetTrend::Unclear;
  DSetTrend db_trend = DSetTrend::Unclear;
  std::optional<std::size_t> tau_a;
  std::optional<std::size_t> tau_b;
};

SpecVerdict spec_verdict(const KneadingPair& kp, const HofbauerGraph& g, std::size_t scan_depth);

bool g_m_membership(const Word& w, std::size_t m, const HofbauerGraph& g);

/// Splits w into (g, s) with s the longest suffix equal to a prefix of b.
std::pair<Word, Word> gs_decompose(const Word& w, const HofbauerGraph& g);

/// Shortest v with |v| <= max_len and u v w admissible, smallest labels first.
std::optional<Word> find_connector(const Word& u, const Word& w, const KneadingPair& kp, std::size_t max_len);

nlohmann::json to_json(const DSetReport& report);
nlohmann::json to_json(const SpecVerdict& verdict);

}  // namespace betakit
