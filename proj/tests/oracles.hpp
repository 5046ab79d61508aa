#pragma once

// Reference computations written independently of the library, used as oracles.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

using Digits = std::vector<int>;

inline mpz_class floor_q(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline mpz_class ceil_q(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

/// Digits of the orbit of 0 under x -> beta x + alpha, floor convention.
inline Digits orbit_of_zero(const mpq_class& alpha, const mpq_class& beta, std::size_t n) {
  Digits out;
  mpq_class x = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class y = beta * x + alpha;
    y.canonicalize();
    const mpz_class d = floor_q(y);
    out.push_back(static_cast<int>(d.get_si()));
    x = y - d;
    x.canonicalize();
  }
  return out;
}

/// Digits of the left limit at 1: ceil(y) - 1, next point in (0, 1].
inline Digits orbit_of_one(const mpq_class& alpha, const mpq_class& beta, std::size_t n) {
  Digits out;
  mpq_class x = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class y = beta * x + alpha;
    y.canonicalize();
    const mpz_class d = ceil_q(y) - 1;
    out.push_back(static_cast<int>(d.get_si()));
    x = y - d;
    x.canonicalize();
  }
  return out;
}

inline std::string str(const Digits& d) {
  std::string s;
  for (int x : d) s.push_back(static_cast<char>(x < 10 ? '0' + x : 'a' + x - 10));
  return s;
}

/// a_1^m <= w_k^n <= b_1^m for every window, compared symbol by symbol.
inline bool admissible(const Digits& w, const Digits& a, const Digits& b) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::size_t m = w.size() - k;
    for (std::size_t i = 0; i < m; ++i) {
      if (w[k + i] > a[i]) break;
      if (w[k + i] < a[i]) return false;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (w[k + i] < b[i]) break;
      if (w[k + i] > b[i]) return false;
    }
  }
  return true;
}

/// Every admissible word of length n, by filtering all (ell+1)^n words.
inline std::vector<Digits> all_admissible(std::size_t n, const Digits& a, const Digits& b, int ell) {
  std::vector<Digits> out;
  Digits w(n, 0);
  for (;;) {
    if (admissible(w, a, b)) out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] == ell) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

/// Smallest 1-based offset where pattern occurs in text, or 0.
inline std::size_t occurs(const Digits& pattern, const Digits& text) {
  if (pattern.size() > text.size()) return 0;
  for (std::size_t j = 0; j + pattern.size() <= text.size(); ++j) {
    if (std::equal(pattern.begin(), pattern.end(), text.begin() + static_cast<std::ptrdiff_t>(j))) return j + 1;
  }
  return 0;
}

}  // namespace oracle
