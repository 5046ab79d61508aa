#include "betakit/word.hpp"

#include <algorithm>

#include "betakit/error.hpp"

namespace betakit {

char digit_char(Digit d) {
  if (d < 10) return static_cast<char>('0' + d);
  if (d < 36) return static_cast<char>('a' + (d - 10));
  throw Error(ErrorCode::InvalidDigit, "symbol " + std::to_string(d) + " has no single-character form");
}

Word Word::parse(std::string_view text) {
  std::vector<Digit> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      digits.push_back(static_cast<Digit>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      digits.push_back(static_cast<Digit>(10 + (c - 'a')));
    } else {
      throw Error(ErrorCode::ParseError, std::string("invalid symbol '") + c + "' in word");
    }
  }
  return Word(std::move(digits));
}

std::string Word::str() const {
  std::string out;
  out.reserve(digits_.size());
  for (Digit d : digits_) out.push_back(digit_char(d));
  return out;
}

Word Word::slice(std::size_t offset, std::size_t length) const {
  if (offset >= digits_.size()) return {};
  const std::size_t end = std::min(digits_.size(), offset + length);
  return Word(std::vector<Digit>(digits_.begin() + static_cast<std::ptrdiff_t>(offset),
                                 digits_.begin() + static_cast<std::ptrdiff_t>(end)));
}

Word Word::suffix(std::size_t length) const {
  length = std::min(length, digits_.size());
  return slice(digits_.size() - length, length);
}

Digit Word::max_digit() const {
  return digits_.empty() ? Digit{0} : *std::max_element(digits_.begin(), digits_.end());
}

std::strong_ordering compare_windows(std::span<const Digit> lhs, std::span<const Digit> rhs) {
  const std::size_t n = std::min(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs[i] != rhs[i]) return lhs[i] <=> rhs[i];
  }
  return lhs.size() <=> rhs.size();
}

}  // namespace betakit
