#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "betakit/coding.hpp"
#include "betakit/word.hpp"

namespace betakit {

enum class WindowSide { Lower, Upper };

struct FailingWindow {
  std::size_t k = 0;  // 1-based start of the violated window
  WindowSide side = WindowSide::Lower;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<FailingWindow> failing_window;
};

/// Checks a_1^{n-k+1} <= w_k^n <= b_1^{n-k+1} for every k.
AdmissibilityReport is_admissible(const Word& w, const KneadingPair& kp);

/// Incremental language recognizer. The state (k1, k2) is the pair of longest
/// suffix matches with prefixes of a and b; it is maintained by KMP transitions.
class LanguageAutomaton {
 public:
  struct State {
    std::uint32_t k1 = 0;
    std::uint32_t k2 = 0;
    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;
  };

  explicit LanguageAutomaton(const KneadingPair& kp);

  /// Smallest and largest admissible next symbol in this state.
  Digit lowest(const State& s) const;
  Digit highest(const State& s) const;
  /// nullopt when the extension leaves the language.
  std::optional<State> step(const State& s, Digit x) const;
  /// Follows a whole word from the empty state.
  std::optional<State> run(const Word& w) const;

  int ell() const noexcept { return ell_; }
  std::size_t depth() const noexcept { return depth_; }

 private:
  void require(std::size_t k) const;

  int ell_ = 0;
  std::size_t depth_ = 0;
  std::vector<Digit> lower_bound_;
  std::vector<Digit> upper_bound_;
  std::vector<std::uint32_t> delta_a_;
  std::vector<std::uint32_t> delta_b_;
};

/// All words of length n in lexicographic order.
std::vector<Word> enumerate_words(std::size_t n, const KneadingPair& kp, std::size_t budget = 50'000'000,
                                  unsigned jobs = 1);

/// |L_n| without listing the words.
Integer count_words(std::size_t n, const KneadingPair& kp);

std::pair<std::size_t, std::size_t> k_coordinates(const Word& w, const KneadingPair& kp);

/// Prefixes of sigma^{k1}(a) and sigma^{k2}(b) up to the certified depth.
std::pair<Word, Word> follower_bounds(const Word& w, const KneadingPair& kp);

}  // namespace betakit
