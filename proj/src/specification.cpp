#include "betakit/specification.hpp"

#include <algorithm>
#include <map>

#include "betakit/error.hpp"
#include "betakit/language.hpp"

namespace betakit {

namespace {

// z[i] = longest common prefix of s and s[i..].
std::vector<std::size_t> z_function(const std::vector<int>& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> z(n, 0);
  if (n > 0) z[0] = n;
  for (std::size_t i = 1, l = 0, r = 0; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

}  // namespace

DSetReport d_set(const KneadingPair& kp, DSetKind which, std::size_t scan_depth) {
  kp.require_depth(scan_depth, "D-set scan");
  const Word& pattern = which == DSetKind::Da ? kp.b : kp.a;
  const Word& text = which == DSetKind::Da ? kp.a : kp.b;
  std::vector<int> joined;
  joined.reserve(2 * scan_depth + 1);
  for (std::size_t i = 0; i < scan_depth; ++i) joined.push_back(pattern[i]);
  joined.push_back(-1);
  for (std::size_t i = 0; i < scan_depth; ++i) joined.push_back(text[i]);
  const auto z = z_function(joined);

  DSetReport report;
  report.which = which;
  report.scan_depth = scan_depth;
  for (std::size_t j = 0; j < scan_depth; ++j) {
    const std::size_t match = std::min(z[scan_depth + 1 + j], scan_depth - j);
    while (report.max_found < match) {
      ++report.max_found;
      report.found.push_back({report.max_found, j + 1});
    }
  }
  return report;
}

std::string_view to_string(SpecOutcome outcome) noexcept {
  switch (outcome) {
    case SpecOutcome::SpecifiedAtDepth: return "SpecifiedAtDepth";
    case SpecOutcome::NotSpecifiedAtDepth: return "NotSpecifiedAtDepth";
    case SpecOutcome::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(DSetTrend trend) noexcept {
  switch (trend) {
    case DSetTrend::Stable: return "stable";
    case DSetTrend::Growing: return "growing";
    case DSetTrend::Unclear: return "unclear";
  }
  return "unclear";
}

namespace {

DSetTrend trend_of(const std::array<std::size_t, 3>& m) {
  if (m[1] == m[2]) return DSetTrend::Stable;
  if (m[0] < m[1] && m[1] < m[2]) return DSetTrend::Growing;
  return DSetTrend::Unclear;
}

std::array<std::size_t, 3> checkpoints(const KneadingPair& kp, DSetKind which, std::size_t scan_depth) {
  return {d_set(kp, which, std::max<std::size_t>(scan_depth / 4, 1)).max_found,
          d_set(kp, which, std::max<std::size_t>(scan_depth / 2, 1)).max_found,
          d_set(kp, which, scan_depth).max_found};
}

}  // namespace

SpecVerdict spec_verdict(const KneadingPair& kp, const HofbauerGraph& g, std::size_t scan_depth) {
  if (!kp.beta_above_two) throw Error(ErrorCode::PreconditionViolated, "specification verdict needs beta > 2");
  SpecVerdict out;
  out.da = d_set(kp, DSetKind::Da, scan_depth);
  out.db = d_set(kp, DSetKind::Db, scan_depth);
  out.da_checkpoints = checkpoints(kp, DSetKind::Da, scan_depth);
  out.db_checkpoints = checkpoints(kp, DSetKind::Db, scan_depth);
  out.da_trend = trend_of(out.da_checkpoints);
  out.db_trend = trend_of(out.db_checkpoints);
  if (out.da_trend == DSetTrend::Growing || out.db_trend == DSetTrend::Growing) {
    out.verdict = SpecOutcome::NotSpecifiedAtDepth;
  } else if (out.da_trend == DSetTrend::Stable && out.db_trend == DSetTrend::Stable) {
    out.verdict = SpecOutcome::SpecifiedAtDepth;
    const std::size_t l = out.da.max_found;
    const std::size_t n = out.db.max_found;
    out.tau_a = path_to_root(vtx(kp.a.prefix(n + 1), g), g).size();
    out.tau_b = path_to_root(vtx(kp.b.prefix(l + 1), g), g).size();
    out.tau_bound = std::max(n + 1, l + 1) + std::max(*out.tau_a, *out.tau_b);
  } else {
    out.verdict = SpecOutcome::Inconclusive;
  }
  return out;
}

bool g_m_membership(const Word& w, std::size_t m, const HofbauerGraph& g) { return vtx(w, g).k <= m; }

std::pair<Word, Word> gs_decompose(const Word& w, const HofbauerGraph& g) {
  const std::size_t k2 = vtx(w, g).k;
  return {w.prefix(w.size() - k2), w.suffix(k2)};
}

std::optional<Word> find_connector(const Word& u, const Word& w, const KneadingPair& kp, std::size_t max_len) {
  const LanguageAutomaton automaton(kp);
  const auto start = automaton.run(u);
  if (!start) throw Error(ErrorCode::PreconditionViolated, "left word is not admissible");
  auto accepts = [&](LanguageAutomaton::State s) {
    for (Digit x : w) {
      const auto next = automaton.step(s, x);
      if (!next) return false;
      s = *next;
    }
    return true;
  };
  // Layered BFS; the first word reaching a state is the lexicographically smallest of its length.
  std::vector<std::pair<LanguageAutomaton::State, Word>> layer{{*start, Word{}}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& [state, v] : layer) {
      if (accepts(state)) return v;
    }
    if (len == max_len) return std::nullopt;
    std::map<LanguageAutomaton::State, bool> seen;
    std::vector<std::pair<LanguageAutomaton::State, Word>> next_layer;
    for (const auto& [state, v] : layer) {
      for (int x = automaton.lowest(state); x <= automaton.highest(state); ++x) {
        const auto next = automaton.step(state, static_cast<Digit>(x));
        if (!seen.emplace(*next, true).second) continue;
        Word extended = v;
        extended.push_back(static_cast<Digit>(x));
        next_layer.emplace_back(*next, std::move(extended));
      }
    }
    layer = std::move(next_layer);
  }
}

nlohmann::json to_json(const DSetReport& report) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.found) witnesses.push_back({w.n, w.j});
  return {{"which", report.which == DSetKind::Da ? "Da" : "Db"},
          {"scan_depth", report.scan_depth},
          {"max_found", report.max_found},
          {"witnesses", std::move(witnesses)}};
}

nlohmann::json to_json(const SpecVerdict& v) {
  auto opt = [](const std::optional<std::size_t>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); };
  return {{"verdict", to_string(v.verdict)},
          {"tau_bound", opt(v.tau_bound)},
          {"tau_a", opt(v.tau_a)},
          {"tau_b", opt(v.tau_b)},
          {"max_Da", v.da.max_found},
          {"max_Db", v.db.max_found},
          {"scan_depth", v.da.scan_depth},
          {"checkpoints", {{"Da", v.da_checkpoints}, {"Db", v.db_checkpoints}}},
          {"trend", {{"Da", to_string(v.da_trend)}, {"Db", to_string(v.db_trend)}}},
          {"witnesses", {{"Da", to_json(v.da)["witnesses"]}, {"Db", to_json(v.db)["witnesses"]}}}};
}

}  // namespace betakit
