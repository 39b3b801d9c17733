#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "config.hpp"

namespace lieinv {

using Index = std::vector<int>;

namespace detail {

inline constexpr int binom_max = 160;

struct BinomTable {
  std::vector<std::uint64_t> c;
  BinomTable() : c(binom_max * binom_max, 0) {
    constexpr auto sat = std::numeric_limits<std::uint64_t>::max();
    for (int n = 0; n < binom_max; ++n) {
      c[n * binom_max] = 1;
      for (int k = 1; k <= n; ++k) {
        auto a = c[(n - 1) * binom_max + k - 1], b = c[(n - 1) * binom_max + k];
        c[n * binom_max + k] = (a == sat || b == sat || a > sat - b) ? sat : a + b;
      }
    }
  }
};

inline const BinomTable& binom_table() {
  static const BinomTable t;
  return t;
}

}  // namespace detail

// Saturates at UINT64_MAX on overflow.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n >= detail::binom_max) throw InvalidInput("binomial argument too large");
  return detail::binom_table().c[n * detail::binom_max + k];
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline std::uint64_t count_increasing(int r, int q) { return binomial(r, q); }
inline std::uint64_t count_multisets(int r, int m) { return m == 0 ? 1 : binomial(r + m - 1, m); }

// Colex rank of a strictly increasing tuple.
inline std::uint64_t rank_increasing(std::span<const int> a) {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += binomial(a[k], static_cast<int>(k) + 1);
  return s;
}

inline void unrank_increasing(std::uint64_t rank, int q, int* out) {
  for (int k = q; k >= 1; --k) {
    int v = k - 1;
    while (binomial(v + 1, k) <= rank) ++v;
    out[k - 1] = v;
    rank -= binomial(v, k);
  }
}

// Nondecreasing tuples map to increasing ones via b_k -> b_k + k.
inline std::uint64_t rank_multiset(std::span<const int> b) {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < b.size(); ++k)
    s += binomial(b[k] + static_cast<int>(k), static_cast<int>(k) + 1);
  return s;
}

inline void unrank_multiset(std::uint64_t rank, int m, int* out) {
  unrank_increasing(rank, m, out);
  for (int k = 0; k < m; ++k) out[k] -= k;
}

// Sorts in place and returns the permutation sign, or 0 on a repeated index.
inline int sort_with_sign(std::span<int> a) {
  int sign = 1;
  for (std::size_t i = 1; i < a.size(); ++i) {
    int v = a[i];
    std::size_t j = i;
    while (j > 0 && a[j - 1] > v) {
      a[j] = a[j - 1];
      --j;
      sign = -sign;
    }
    a[j] = v;
    if (j > 0 && a[j - 1] == v) return 0;
  }
  return sign;
}

inline int permutation_sign(std::span<const int> a) {
  std::vector<int> c(a.begin(), a.end());
  return sort_with_sign(c);
}

// m!/prod(repeats!) for a canonical multiset: number of distinct orderings.
inline std::uint64_t multiplicity(std::span<const int> b) {
  std::uint64_t num = factorial(static_cast<int>(b.size()));
  std::size_t i = 0;
  while (i < b.size()) {
    std::size_t j = i;
    while (j < b.size() && b[j] == b[i]) ++j;
    num /= factorial(static_cast<int>(j - i));
    i = j;
  }
  return num;
}

inline std::uint64_t repeat_factorials(std::span<const int> b) {
  std::uint64_t p = 1;
  std::size_t i = 0;
  while (i < b.size()) {
    std::size_t j = i;
    while (j < b.size() && b[j] == b[i]) ++j;
    p *= factorial(static_cast<int>(j - i));
    i = j;
  }
  return p;
}

// Lexicographic successors; return false after the last tuple.
inline bool next_increasing(std::span<int> a, int r) {
  int q = static_cast<int>(a.size());
  int k = q - 1;
  while (k >= 0 && a[k] == r - q + k) --k;
  if (k < 0) return false;
  ++a[k];
  for (int j = k + 1; j < q; ++j) a[j] = a[j - 1] + 1;
  return true;
}

inline bool next_multiset(std::span<int> b, int r) {
  int m = static_cast<int>(b.size());
  int k = m - 1;
  while (k >= 0 && b[k] == r - 1) --k;
  if (k < 0) return false;
  ++b[k];
  for (int j = k + 1; j < m; ++j) b[j] = b[k];
  return true;
}

inline Index first_increasing(int q) {
  Index a(q);
  for (int k = 0; k < q; ++k) a[k] = k;
  return a;
}

// Complement of an increasing tuple in {0..r-1}, and the sign of (a, complement).
inline int complement_with_sign(std::span<const int> a, int r, Index& comp) {
  comp.clear();
  std::size_t p = 0;
  long inversions = 0;
  for (int v = 0; v < r; ++v) {
    if (p < a.size() && a[p] == v) {
      ++p;
    } else {
      comp.push_back(v);
      inversions += static_cast<long>(a.size() - p);
    }
  }
  return (inversions % 2) ? -1 : 1;
}

}  // namespace lieinv
