#include "betakit/language.hpp"

#include <algorithm>
#include <future>
#include <map>

#include "betakit/error.hpp"

namespace betakit {

namespace {

void check_digits(const Word& w, int ell) {
  for (Digit d : w) {
    if (d > ell) throw Error(ErrorCode::InvalidDigit, "symbol " + std::to_string(d) + " exceeds ell = " + std::to_string(ell));
  }
}

// Longest proper border of s_1^{i+1}, for each i.
std::vector<std::uint32_t> failure_function(std::span<const Digit> s) {
  std::vector<std::uint32_t> pi(s.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::uint32_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  return pi;
}

// delta[len][x]: longest prefix of s that is a suffix of (s_1^len) x, for len < |s|.
std::vector<std::uint32_t> transitions(std::span<const Digit> s, const std::vector<std::uint32_t>& pi, int ell) {
  const std::size_t width = static_cast<std::size_t>(ell) + 1;
  std::vector<std::uint32_t> delta(s.size() * width, 0);
  for (std::size_t len = 0; len < s.size(); ++len) {
    for (std::size_t x = 0; x < width; ++x) {
      if (s[len] == x) {
        delta[len * width + x] = static_cast<std::uint32_t>(len + 1);
      } else if (len > 0) {
        delta[len * width + x] = delta[pi[len - 1] * width + x];
      }
    }
  }
  return delta;
}

}  // namespace

AdmissibilityReport is_admissible(const Word& w, const KneadingPair& kp) {
  check_digits(w, kp.ell);
  kp.require_depth(w.size(), "admissibility test");
  const std::size_t n = w.size();
  const auto a = kp.a.span();
  const auto b = kp.b.span();
  const auto digits = w.span();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t len = n - k;
    const auto window = digits.subspan(k, len);
    if (compare_windows(window, a.first(len)) < 0) return {false, FailingWindow{k + 1, WindowSide::Lower}};
    if (compare_windows(window, b.first(len)) > 0) return {false, FailingWindow{k + 1, WindowSide::Upper}};
  }
  return {};
}

LanguageAutomaton::LanguageAutomaton(const KneadingPair& kp) : ell_(kp.ell), depth_(kp.certified_len) {
  const auto a = kp.a.span().first(depth_);
  const auto b = kp.b.span().first(depth_);
  const auto pi_a = failure_function(a);
  const auto pi_b = failure_function(b);
  lower_bound_.resize(depth_);
  upper_bound_.resize(depth_);
  for (std::size_t i = 0; i < depth_; ++i) {
    // Every a-prefix that is a suffix of the current word forbids symbols below its continuation.
    lower_bound_[i] = i == 0 ? a[0] : std::max(a[i], lower_bound_[pi_a[i - 1]]);
    upper_bound_[i] = i == 0 ? b[0] : std::min(b[i], upper_bound_[pi_b[i - 1]]);
  }
  delta_a_ = transitions(a, pi_a, ell_);
  delta_b_ = transitions(b, pi_b, ell_);
}

void LanguageAutomaton::require(std::size_t k) const {
  if (k >= depth_)
    throw Error(ErrorCode::InsufficientKneadingDepth,
                "language automaton needs kneading digit " + std::to_string(k + 1) + ", only " +
                    std::to_string(depth_) + " are certified");
}

Digit LanguageAutomaton::lowest(const State& s) const {
  require(s.k1);
  return lower_bound_[s.k1];
}

Digit LanguageAutomaton::highest(const State& s) const {
  require(s.k2);
  return upper_bound_[s.k2];
}

std::optional<LanguageAutomaton::State> LanguageAutomaton::step(const State& s, Digit x) const {
  if (x > ell_) throw Error(ErrorCode::InvalidDigit, "symbol exceeds ell");
  if (x < lowest(s) || x > highest(s)) return std::nullopt;
  const std::size_t width = static_cast<std::size_t>(ell_) + 1;
  return State{delta_a_[s.k1 * width + x], delta_b_[s.k2 * width + x]};
}

std::optional<LanguageAutomaton::State> LanguageAutomaton::run(const Word& w) const {
  State s;
  for (Digit x : w) {
    const auto next = step(s, x);
    if (!next) return std::nullopt;
    s = *next;
  }
  return s;
}

namespace {

struct Enumerator {
  const LanguageAutomaton& automaton;
  std::size_t n;
  std::size_t budget;
  std::vector<Word>& out;
  std::vector<Digit> current;

  void visit(const LanguageAutomaton::State& s) {
    if (current.size() == n) {
      if (out.size() >= budget)
        throw Error(ErrorCode::EnumerationBudgetExceeded,
                    "more than " + std::to_string(budget) + " words of length " + std::to_string(n));
      out.emplace_back(current);
      return;
    }
    const Digit lo = automaton.lowest(s);
    const Digit hi = automaton.highest(s);
    for (int x = lo; x <= hi; ++x) {
      const auto next = automaton.step(s, static_cast<Digit>(x));
      current.push_back(static_cast<Digit>(x));
      visit(*next);
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<Word> enumerate_words(std::size_t n, const KneadingPair& kp, std::size_t budget, unsigned jobs) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "word length must be >= 1");
  kp.require_depth(n, "enumeration");
  const LanguageAutomaton automaton(kp);
  const LanguageAutomaton::State root;
  if (jobs <= 1) {
    std::vector<Word> out;
    Enumerator{automaton, n, budget, out, {}}.visit(root);
    return out;
  }
  // Fan out over the first symbol; merging in symbol order keeps the output lexicographic.
  std::vector<std::future<std::vector<Word>>> parts;
  for (int x = automaton.lowest(root); x <= automaton.highest(root); ++x) {
    parts.push_back(std::async(std::launch::async, [&, x] {
      std::vector<Word> part;
      Enumerator e{automaton, n, budget, part, {static_cast<Digit>(x)}};
      e.visit(*automaton.step(root, static_cast<Digit>(x)));
      return part;
    }));
  }
  std::vector<Word> out;
  for (auto& part : parts) {
    auto words = part.get();
    if (out.size() + words.size() > budget)
      throw Error(ErrorCode::EnumerationBudgetExceeded,
                  "more than " + std::to_string(budget) + " words of length " + std::to_string(n));
    std::move(words.begin(), words.end(), std::back_inserter(out));
  }
  return out;
}

Integer count_words(std::size_t n, const KneadingPair& kp) {
  kp.require_depth(n, "word count");
  const LanguageAutomaton automaton(kp);
  std::map<LanguageAutomaton::State, Integer> layer{{LanguageAutomaton::State{}, Integer(1)}};
  for (std::size_t i = 0; i < n; ++i) {
    std::map<LanguageAutomaton::State, Integer> next;
    for (const auto& [state, count] : layer) {
      for (int x = automaton.lowest(state); x <= automaton.highest(state); ++x) {
        next[*automaton.step(state, static_cast<Digit>(x))] += count;
      }
    }
    layer = std::move(next);
  }
  Integer total = 0;
  for (const auto& [state, count] : layer) total += count;
  return total;
}

std::pair<std::size_t, std::size_t> k_coordinates(const Word& w, const KneadingPair& kp) {
  kp.require_depth(w.size(), "k coordinates");
  auto longest = [&w](const Word& reference) {
    for (std::size_t k = w.size(); k > 0; --k) {
      if (std::equal(w.end() - static_cast<std::ptrdiff_t>(k), w.end(), reference.begin())) return k;
    }
    return std::size_t{0};
  };
  return {longest(kp.a), longest(kp.b)};
}

std::pair<Word, Word> follower_bounds(const Word& w, const KneadingPair& kp) {
  const auto [k1, k2] = k_coordinates(w, kp);
  return {kp.a.slice(k1, kp.certified_len - std::min(k1, kp.certified_len)),
          kp.b.slice(k2, kp.certified_len - std::min(k2, kp.certified_len))};
}

}  // namespace betakit
