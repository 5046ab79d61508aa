#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace betakit {

using Digit = std::uint8_t;

/// Finite word over {0, ..., ell}. Indexing is 0-based; w[i] is the symbol w_{i+1}.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Digit> digits) : digits_(digits) {}
  explicit Word(std::vector<Digit> digits) : digits_(std::move(digits)) {}

  /// Digits 0-9 then a-z for symbols 10-35.
  static Word parse(std::string_view text);
  std::string str() const;

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  Digit& operator[](std::size_t i) { return digits_[i]; }
  Digit back() const { return digits_.back(); }

  void push_back(Digit d) { digits_.push_back(d); }
  void pop_back() { digits_.pop_back(); }
  void append(const Word& other) { digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end()); }
  void reserve(std::size_t n) { digits_.reserve(n); }
  void truncate(std::size_t n) {
    if (n < digits_.size()) digits_.resize(n);
  }

  /// Symbols [offset, offset + length), clipped to the word.
  Word slice(std::size_t offset, std::size_t length) const;
  Word prefix(std::size_t length) const { return slice(0, length); }
  Word suffix(std::size_t length) const;

  std::span<const Digit> span() const noexcept { return digits_; }
  const std::vector<Digit>& digits() const noexcept { return digits_; }
  auto begin() const noexcept { return digits_.begin(); }
  auto end() const noexcept { return digits_.end(); }

  Digit max_digit() const;

  friend Word operator+(Word lhs, const Word& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const Word&, const Word&) = default;
  /// Lexicographic order; for words of equal length this is the order on cylinders.
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
    return lhs.digits_ <=> rhs.digits_;
  }

 private:
  std::vector<Digit> digits_;
};

/// Lexicographic comparison of two equal-length windows.
std::strong_ordering compare_windows(std::span<const Digit> lhs, std::span<const Digit> rhs);

char digit_char(Digit d);

}  // namespace betakit
