#include "betakit/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "betakit/error.hpp"
#include "betakit/language.hpp"

namespace betakit {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::size_t power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Log of a sum given as exp(terms); empty sums give -inf.
double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

}  // namespace

Potential::Potential(std::size_t range, int ell) : range_(range), ell_(ell) {
  if (range == 0) throw Error(ErrorCode::InvalidArgument, "potential range must be >= 1");
  if (range > 8) throw Error(ErrorCode::InvalidArgument, "potential range above 8 is not supported");
  table_.assign(power(static_cast<std::size_t>(ell) + 1, range), kMissing);
}

std::size_t Potential::index(std::span<const Digit> window) const {
  if (window.size() != range_)
    throw Error(ErrorCode::InvalidArgument, "potential window must have exactly " + std::to_string(range_) + " symbols");
  std::size_t out = 0;
  for (Digit d : window) {
    if (d > ell_) throw Error(ErrorCode::InvalidDigit, "symbol exceeds ell in potential lookup");
    out = out * (static_cast<std::size_t>(ell_) + 1) + d;
  }
  return out;
}

void Potential::refresh_bounds() {
  min_ = std::numeric_limits<double>::infinity();
  max_ = -std::numeric_limits<double>::infinity();
  for (double v : table_) {
    if (std::isnan(v)) continue;
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
  if (min_ > max_) min_ = max_ = 0.0;
}

Potential Potential::from_function(std::size_t range, int ell, const std::function<double(const Word&)>& fn) {
  Potential phi(range, ell);
  const std::size_t base = static_cast<std::size_t>(ell) + 1;
  for (std::size_t code = 0; code < phi.table_.size(); ++code) {
    std::vector<Digit> digits(range);
    std::size_t rest = code;
    for (std::size_t i = range; i-- > 0;) {
      digits[i] = static_cast<Digit>(rest % base);
      rest /= base;
    }
    const double value = fn(Word(std::move(digits)));
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "potential values must be finite");
    phi.table_[code] = value;
  }
  phi.refresh_bounds();
  return phi;
}

Potential Potential::constant(double value, int ell) {
  return from_function(1, ell, [value](const Word&) { return value; });
}

Potential Potential::from_json(const nlohmann::json& spec, const KneadingPair& kp) {
  if (!spec.is_object() || !spec.contains("range") || !spec.contains("values") || !spec["values"].is_object())
    throw Error(ErrorCode::ParseError, "potential must be an object with 'range' and 'values'");
  const auto range = spec["range"].get<long long>();
  if (range < 1) throw Error(ErrorCode::InvalidArgument, "potential range must be >= 1");
  Potential phi(static_cast<std::size_t>(range), kp.ell);
  for (const auto& [key, value] : spec["values"].items()) {
    const Word w = Word::parse(key);
    if (w.size() != phi.range_)
      throw Error(ErrorCode::InvalidArgument, "potential key '" + key + "' has the wrong length");
    if (!value.is_number()) throw Error(ErrorCode::ParseError, "potential value for '" + key + "' is not a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "potential values must be finite");
    phi.table_[phi.index(w.span())] = v;
  }
  phi.refresh_bounds();
  phi.validate(kp);
  return phi;
}

double Potential::operator()(std::span<const Digit> window) const {
  const double v = table_[index(window)];
  if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "potential has no value for this window");
  return v;
}

bool Potential::defined(std::span<const Digit> window) const { return !std::isnan(table_[index(window)]); }

Potential Potential::shifted(double c) const {
  Potential out = *this;
  for (double& v : out.table_) {
    if (!std::isnan(v)) v += c;
  }
  out.refresh_bounds();
  return out;
}

void Potential::validate(const KneadingPair& kp) const {
  if (kp.ell != ell_) throw Error(ErrorCode::InvalidArgument, "potential alphabet does not match the kneading pair");
  for (const Word& w : enumerate_words(range_, kp)) {
    if (!defined(w.span()))
      throw Error(ErrorCode::InvalidArgument, "potential has no value for admissible word '" + w.str() + "'");
  }
}

nlohmann::json Potential::to_json() const {
  nlohmann::json values = nlohmann::json::object();
  const std::size_t base = static_cast<std::size_t>(ell_) + 1;
  for (std::size_t code = 0; code < table_.size(); ++code) {
    if (std::isnan(table_[code])) continue;
    std::string key(range_, '0');
    std::size_t rest = code;
    for (std::size_t i = range_; i-- > 0;) {
      key[i] = digit_char(static_cast<Digit>(rest % base));
      rest /= base;
    }
    values[key] = table_[code];
  }
  return {{"range", range_}, {"values", std::move(values)}};
}

double birkhoff_sum(const Word& x_prefix, std::size_t n, const Potential& phi) {
  const std::size_t r = phi.range();
  if (x_prefix.size() < n + r - 1)
    throw Error(ErrorCode::PrefixTooShort, "Birkhoff sum of length " + std::to_string(n) + " needs " +
                                               std::to_string(n + r - 1) + " symbols, got " +
                                               std::to_string(x_prefix.size()));
  const auto digits = x_prefix.span();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += phi(digits.subspan(i, r));
  return sum;
}

namespace {

// Largest sum of the windows that start inside `tail`, over admissible continuations
// of length r - 1 from `state`.
double best_extension(const LanguageAutomaton& automaton, LanguageAutomaton::State state, std::vector<Digit>& tail,
                      std::size_t windows, const Potential& phi) {
  const std::size_t r = phi.range();
  const std::size_t needed = windows + r - 1;
  if (tail.size() == needed) {
    double sum = 0.0;
    for (std::size_t i = 0; i < windows; ++i) sum += phi(std::span<const Digit>(tail).subspan(i, r));
    return sum;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int x = automaton.lowest(state); x <= automaton.highest(state); ++x) {
    const auto next = automaton.step(state, static_cast<Digit>(x));
    tail.push_back(static_cast<Digit>(x));
    best = std::max(best, best_extension(automaton, *next, tail, windows, phi));
    tail.pop_back();
  }
  return best;
}

}  // namespace

double sup_on_cylinder(const Word& w, const Potential& phi, const KneadingPair& kp) {
  const std::size_t r = phi.range();
  kp.require_depth(w.size() + r - 1, "cylinder supremum");
  const LanguageAutomaton automaton(kp);
  const auto state = automaton.run(w);
  if (!state) throw Error(ErrorCode::PreconditionViolated, "word '" + w.str() + "' is not admissible");
  const std::size_t inner = w.size() >= r - 1 ? w.size() - (r - 1) : 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < inner; ++i) sum += phi(w.span().subspan(i, r));
  std::vector<Digit> tail(w.begin() + static_cast<std::ptrdiff_t>(inner), w.end());
  const double extra = best_extension(automaton, *state, tail, w.size() - inner, phi);
  if (std::isinf(extra)) throw Error(ErrorCode::NoAdmissibleExtension, "no admissible extension of '" + w.str() + "'");
  return sum + extra;
}

std::string describe(const WordSubset& subset) {
  if (std::holds_alternative<FullLanguage>(subset)) return "L";
  if (std::holds_alternative<BPrefixes>(subset)) return "S";
  return "G(" + std::to_string(std::get<GM>(subset).m) + ")";
}

namespace {

struct SumState {
  LanguageAutomaton::State automaton;
  std::vector<Digit> tail;  // last min(length, r - 1) symbols
  friend auto operator<=>(const SumState&, const SumState&) = default;
};

// log Lambda_n for n = 1 .. n_max in a single sweep over the word tree, grouped by
// automaton state and the last r - 1 symbols.
std::vector<double> log_partition_sums(std::size_t n_max, const Potential& phi, const KneadingPair& kp,
                                       const WordSubset& subset, std::size_t budget) {
  const std::size_t r = phi.range();
  std::vector<double> out;
  out.reserve(n_max);
  if (std::holds_alternative<BPrefixes>(subset)) {
    for (std::size_t n = 1; n <= n_max; ++n) out.push_back(sup_on_cylinder(kp.b.prefix(n), phi, kp));
    return out;
  }
  kp.require_depth(n_max + r - 1, "partition sum");
  const LanguageAutomaton automaton(kp);
  const std::optional<std::size_t> k2_cap =
      std::holds_alternative<GM>(subset) ? std::optional<std::size_t>(std::get<GM>(subset).m) : std::nullopt;

  std::map<SumState, double> layer{{SumState{}, 1.0}};
  std::map<SumState, double> extension_cache;
  double scale = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::map<SumState, double> next;
    for (const auto& [state, weight] : layer) {
      for (int x = automaton.lowest(state.automaton); x <= automaton.highest(state.automaton); ++x) {
        SumState target{*automaton.step(state.automaton, static_cast<Digit>(x)), state.tail};
        target.tail.push_back(static_cast<Digit>(x));
        double w = weight;
        if (target.tail.size() == r) {
          w *= std::exp(phi(target.tail));
          target.tail.erase(target.tail.begin());
        } else if (target.tail.size() > r - 1) {
          target.tail.erase(target.tail.begin());
        }
        next[std::move(target)] += w;
      }
    }
    if (next.size() > budget)
      throw Error(ErrorCode::EnumerationBudgetExceeded,
                  "partition sum at n = " + std::to_string(n) + " needs more than " + std::to_string(budget) + " states");
    double top = 0.0;
    for (const auto& [state, weight] : next) top = std::max(top, weight);
    for (auto& [state, weight] : next) weight /= top;
    scale += std::log(top);
    layer = std::move(next);

    std::vector<double> terms;
    terms.reserve(layer.size());
    for (const auto& [state, weight] : layer) {
      if (k2_cap && state.automaton.k2 > *k2_cap) continue;
      auto [it, fresh] = extension_cache.emplace(state, 0.0);
      if (fresh) {
        std::vector<Digit> tail = state.tail;
        it->second = best_extension(automaton, state.automaton, tail, tail.size(), phi);
      }
      terms.push_back(std::log(weight) + it->second);
    }
    out.push_back(scale + log_sum_exp(terms));
  }
  return out;
}

}  // namespace

double log_partition_sum(std::size_t n, const Potential& phi, const KneadingPair& kp, const WordSubset& subset,
                         std::size_t budget) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "partition sums need n >= 1");
  return log_partition_sums(n, phi, kp, subset, budget).back();
}

double partition_sum(std::size_t n, const Potential& phi, const KneadingPair& kp, const WordSubset& subset,
                     std::size_t budget) {
  return std::exp(log_partition_sum(n, phi, kp, subset, budget));
}

PressureEstimate pressure_by_counting(const Potential& phi, const KneadingPair& kp, std::size_t n_max,
                                      const WordSubset& subset, std::size_t budget) {
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  PressureEstimate estimate;
  estimate.method = "counting:" + describe(subset);
  const auto logs = log_partition_sums(n_max, phi, kp, subset, budget);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double value = logs[n - 1];
    estimate.per_n.push_back({n, value, value / static_cast<double>(n)});
  }
  return estimate;
}

namespace {

struct SparseOperator {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> targets;
  std::vector<double> weights;

  std::size_t size() const { return offsets.size() - 1; }
};

// Perron root of (A restricted to `members`) by shifted power iteration.
std::pair<double, std::size_t> perron_root(const SparseOperator& op, const std::vector<char>& members,
                                           const TransferOptions& options) {
  const std::size_t n = op.size();
  std::vector<double> x(n, 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (members[i]) {
      x[i] = 1.0;
      ++count;
    }
  }
  if (count == 0) return {0.0, 0};
  for (double& v : x) v /= static_cast<double>(count);
  std::vector<double> y(n);
  double previous = -1.0;
  std::size_t stable = 0;
  for (std::size_t iteration = 1; iteration <= options.max_iterations; ++iteration) {
    std::fill(y.begin(), y.end(), 0.0);
    // Push mass along edges; with sum(x) == 1 the pushed total estimates the root.
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      for (std::size_t e = op.offsets[i]; e < op.offsets[i + 1]; ++e) {
        const std::size_t t = op.targets[e];
        if (members[t]) y[t] += op.weights[e] * x[i];
      }
    }
    double total = 0.0;
    for (double v : y) total += v;
    const double lambda = total;  // sum(x) == 1
    for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
    const double norm = total + 1.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (previous >= 0.0 && std::abs(lambda - previous) <= options.tolerance * std::max(lambda, 1e-300)) {
      if (++stable >= 5) return {lambda, iteration};
    } else {
      stable = 0;
    }
    previous = lambda;
  }
  throw Error(ErrorCode::NonConvergence,
              "power iteration did not settle within " + std::to_string(options.max_iterations) + " iterations");
}

// Tarjan's algorithm, iterative. Returns the component id of each node.
std::vector<std::size_t> strongly_connected(const SparseOperator& op, std::size_t& component_count) {
  const std::size_t n = op.size();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0), component(n, unset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  component_count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, op.offsets[root]}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!work.empty()) {
      auto& [v, edge] = work.back();
      if (edge < op.offsets[v + 1]) {
        const std::size_t t = op.targets[edge++];
        if (index[t] == unset) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = 1;
          work.emplace_back(t, op.offsets[t]);
        } else if (on_stack[t]) {
          low[v] = std::min(low[v], index[t]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          component[w] = component_count;
        } while (w != v);
        ++component_count;
      }
      const std::size_t finished = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[finished]);
    }
  }
  return component;
}

}  // namespace

SpectralEstimate transfer_pressure_report(const HofbauerGraph& g, const Potential& phi, TransferOptions options) {
  const std::size_t r = phi.range();
  const double top = phi.max_value();
  // States are (vertex, last r - 1 labels); shorter histories only occur on the way in from the root.
  std::map<std::pair<std::size_t, std::vector<Digit>>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::vector<Digit>>> states;
  auto intern = [&](std::size_t v, std::vector<Digit> history) {
    auto key = std::make_pair(v, std::move(history));
    const auto [it, fresh] = index.emplace(key, states.size());
    if (fresh) states.push_back(std::move(key));
    return it->second;
  };
  intern(g.root(), {});
  SparseOperator op;
  op.offsets.push_back(0);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::size_t v = states[s].first;
    const std::vector<Digit> history = states[s].second;
    for (const Edge& e : g.out_edges(v)) {
      std::vector<Digit> window = history;
      window.push_back(e.label);
      double weight = 1.0;
      if (window.size() == r) weight = std::exp(phi(window) - top);
      if (window.size() > r - 1) window.erase(window.begin());
      const std::size_t target = intern(e.truncated() ? g.root() : e.target, std::move(window));
      op.targets.push_back(target);
      op.weights.push_back(weight);
    }
    op.offsets.push_back(op.targets.size());
  }

  SpectralEstimate out;
  out.depth = g.depth();
  out.states = states.size();
  const std::vector<char> everything(states.size(), 1);
  const auto [lambda, iterations] = perron_root(op, everything, options);
  if (!(lambda > 0.0)) throw Error(ErrorCode::NonConvergence, "transfer operator has spectral radius 0");
  out.value = std::log(lambda) + top;
  out.iterations = iterations;

  std::size_t count = 0;
  const auto component = strongly_connected(op, count);
  out.components = count;
  std::vector<std::size_t> sizes(count, 0);
  for (std::size_t c : component) ++sizes[c];
  std::vector<char> recurrent(count, 0);
  for (std::size_t i = 0; i < op.size(); ++i) {
    for (std::size_t e = op.offsets[i]; e < op.offsets[i + 1]; ++e) {
      if (component[op.targets[e]] == component[i]) recurrent[component[i]] = 1;
    }
  }
  out.dominant_component_value = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < count; ++c) {
    if (!recurrent[c]) continue;
    std::vector<char> members(op.size(), 0);
    for (std::size_t i = 0; i < op.size(); ++i) members[i] = component[i] == c;
    const double root = perron_root(op, members, options).first;
    if (root <= 0.0) continue;
    const double value = std::log(root) + top;
    if (value > out.dominant_component_value) {
      out.dominant_component_value = value;
      out.dominant_component_size = sizes[c];
    }
  }
  return out;
}

double transfer_pressure(const HofbauerGraph& g, const Potential& phi, TransferOptions options) {
  return transfer_pressure_report(g, phi, options).value;
}

double bowen_constant(const Potential& phi) {
  return static_cast<double>(phi.range() - 1) * (phi.max_value() - phi.min_value());
}

Ct3Margin ct3_margin(const Potential& phi, const KneadingPair& kp, const HofbauerGraph& g, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  Ct3Margin out;
  out.n = n;
  out.pressure = transfer_pressure(g, phi);
  out.orbit_average = birkhoff_sum(kp.b, n, phi) / static_cast<double>(n);
  out.margin = out.pressure - out.orbit_average;
  out.v = bowen_constant(phi);
  out.w = std::max(out.v, phi.sup_norm());
  return out;
}

std::string to_csv(const PressureEstimate& estimate) {
  std::ostringstream out;
  out.precision(17);
  out << "n,logLambda,logLambda_over_n\n";
  for (const auto& row : estimate.per_n) out << row.n << ',' << row.log_lambda << ',' << row.rate << '\n';
  return out.str();
}

nlohmann::json to_json(const PressureEstimate& estimate) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : estimate.per_n) rows.push_back({{"n", row.n}, {"logLambda", row.log_lambda}, {"rate", row.rate}});
  nlohmann::json out{{"method", estimate.method}, {"n_max", estimate.per_n.size()}, {"per_n", std::move(rows)}};
  if (!estimate.per_n.empty()) out["value"] = estimate.per_n.back().rate;
  if (estimate.spectral) {
    const auto& s = *estimate.spectral;
    out["spectral"] = {{"depth", s.depth},
                       {"value", s.value},
                       {"iterations", s.iterations},
                       {"states", s.states},
                       {"components", s.components},
                       {"dominant_component_size", s.dominant_component_size},
                       {"dominant_component_value", s.dominant_component_value}};
  }
  return out;
}

nlohmann::json to_json(const Ct3Margin& m) {
  return {{"method", "ct3"}, {"n", m.n},         {"value", m.pressure}, {"orbit_average", m.orbit_average},
          {"margin", m.margin}, {"V", m.v}, {"W", m.w}};
}

}  // namespace betakit
