#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "config.hpp"
#include "index.hpp"

namespace lieinv {

enum class Kind { sym, alt };

inline constexpr int max_order = 64;

// Sparse tensor keyed by the colex rank of its canonical index tuple:
// nondecreasing tuples for Kind::sym, strictly increasing for Kind::alt.
// Indices are 0-based in memory.
template <Kind K>
class SparseTensor {
 public:
  SparseTensor() = default;
  SparseTensor(int order, int dim) : order_(order), dim_(dim) {
    if (order < 0 || order > max_order || dim < 0) throw InvalidInput("bad tensor shape");
  }

  static constexpr Kind kind = K;

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t nnz() const { return ranks_.size(); }
  bool empty() const { return ranks_.empty(); }

  static std::uint64_t capacity(int order, int dim) {
    return K == Kind::sym ? count_multisets(dim, order) : count_increasing(dim, order);
  }
  std::uint64_t capacity() const { return capacity(order_, dim_); }

  static std::uint64_t rank(std::span<const int> canonical) {
    return K == Kind::sym ? rank_multiset(canonical) : rank_increasing(canonical);
  }
  void unrank(std::uint64_t rk, int* out) const {
    if constexpr (K == Kind::sym)
      unrank_multiset(rk, order_, out);
    else
      unrank_increasing(rk, order_, out);
  }

  double at_rank(std::uint64_t rk) const {
    auto it = std::lower_bound(ranks_.begin(), ranks_.end(), rk);
    if (it == ranks_.end() || *it != rk) return 0.0;
    return values_[static_cast<std::size_t>(it - ranks_.begin())];
  }

  double at_canonical(std::span<const int> idx) const { return at_rank(rank(idx)); }

  // Lookup at any index order.
  double operator()(std::span<const int> idx) const {
    std::array<int, max_order> buf;
    std::copy(idx.begin(), idx.end(), buf.begin());
    std::span<int> s(buf.data(), idx.size());
    if constexpr (K == Kind::sym) {
      std::sort(s.begin(), s.end());
      return at_canonical(s);
    } else {
      int sign = sort_with_sign(s);
      if (sign == 0) return 0.0;
      return sign * at_canonical(s);
    }
  }
  double operator()(std::initializer_list<int> idx) const {
    return (*this)(std::span<const int>(idx.begin(), idx.size()));
  }

  std::uint64_t rank_at(std::size_t k) const { return ranks_[k]; }
  double value_at(std::size_t k) const { return values_[k]; }
  Index key_at(std::size_t k) const {
    Index a(order_);
    unrank(ranks_[k], a.data());
    return a;
  }

  template <class F>
  void for_each(F&& fn) const {
    Index a(order_);
    for (std::size_t k = 0; k < ranks_.size(); ++k) {
      unrank(ranks_[k], a.data());
      fn(static_cast<const Index&>(a), values_[k]);
    }
  }

  double max_abs() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  // Dense rank-indexed copy for hot lookups.
  std::vector<double> to_dense() const {
    require_budget(capacity(), "dense view");
    std::vector<double> d(capacity(), 0.0);
    for (std::size_t k = 0; k < ranks_.size(); ++k) d[ranks_[k]] = values_[k];
    return d;
  }

  SparseTensor scaled(double c) const {
    SparseTensor t(order_, dim_);
    for (std::size_t k = 0; k < ranks_.size(); ++k) t.push(ranks_[k], c * values_[k]);
    return t;
  }

  // Entries must arrive in increasing rank order.
  void push(std::uint64_t rk, double v) {
    if (std::abs(v) <= drop_tolerance) return;
    if (!ranks_.empty() && rk <= ranks_.back()) throw InvalidInput("entries out of order");
    ranks_.push_back(rk);
    values_.push_back(v);
  }

  static SparseTensor from_dense(int order, int dim, const std::vector<double>& dense) {
    SparseTensor t(order, dim);
    for (std::uint64_t rk = 0; rk < dense.size(); ++rk) t.push(rk, dense[rk]);
    return t;
  }

  static SparseTensor from_map(int order, int dim, const std::unordered_map<std::uint64_t, double>& m) {
    std::vector<std::pair<std::uint64_t, double>> v(m.begin(), m.end());
    std::sort(v.begin(), v.end());
    SparseTensor t(order, dim);
    for (auto& [rk, x] : v) t.push(rk, x);
    return t;
  }

  // Entries given as (canonical 0-based tuple, value); duplicates are summed.
  static SparseTensor from_entries(int order, int dim,
                                   const std::vector<std::pair<Index, double>>& entries) {
    std::unordered_map<std::uint64_t, double> m;
    for (auto& [idx, v] : entries) {
      if (static_cast<int>(idx.size()) != order) throw InvalidInput("entry order mismatch");
      Index c = idx;
      int sign = 1;
      if constexpr (K == Kind::sym) {
        std::sort(c.begin(), c.end());
      } else {
        sign = sort_with_sign(c);
        if (sign == 0) throw InvalidInput("repeated index in antisymmetric entry");
      }
      for (int i : c)
        if (i < 0 || i >= dim) throw InvalidInput("index out of range");
      m[rank(c)] += sign * v;
    }
    return from_map(order, dim, m);
  }

  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    return a.order_ == b.order_ && a.dim_ == b.dim_ && a.ranks_ == b.ranks_ && a.values_ == b.values_;
  }

 private:
  int order_ = 0;
  int dim_ = 0;
  std::vector<std::uint64_t> ranks_;
  std::vector<double> values_;
};

using SymTensor = SparseTensor<Kind::sym>;
using AltTensor = SparseTensor<Kind::alt>;

// Rank-keyed accumulator: dense when the canonical space is small, hashed otherwise.
template <Kind K>
class Accumulator {
 public:
  Accumulator(int order, int dim)
      : order_(order), dim_(dim), dense_mode_(SparseTensor<K>::capacity(order, dim) <= dense_limit) {
    if (dense_mode_) dense_.assign(SparseTensor<K>::capacity(order, dim), 0.0);
  }
  void add(std::uint64_t rk, double v) {
    if (dense_mode_)
      dense_[rk] += v;
    else
      map_[rk] += v;
  }
  SparseTensor<K> finish() const {
    if (dense_mode_) return SparseTensor<K>::from_dense(order_, dim_, dense_);
    return SparseTensor<K>::from_map(order_, dim_, map_);
  }

 private:
  static constexpr std::uint64_t dense_limit = 1ULL << 25;
  int order_, dim_;
  bool dense_mode_;
  std::vector<double> dense_;
  std::unordered_map<std::uint64_t, double> map_;
};

template <Kind K>
SparseTensor<K> linear_combination(const SparseTensor<K>& a, double ca, const SparseTensor<K>& b, double cb) {
  if (a.order() != b.order() || a.dim() != b.dim()) throw InvalidInput("shape mismatch");
  SparseTensor<K> t(a.order(), a.dim());
  std::size_t i = 0, j = 0;
  while (i < a.nnz() || j < b.nnz()) {
    if (j == b.nnz() || (i < a.nnz() && a.rank_at(i) < b.rank_at(j))) {
      t.push(a.rank_at(i), ca * a.value_at(i));
      ++i;
    } else if (i == a.nnz() || b.rank_at(j) < a.rank_at(i)) {
      t.push(b.rank_at(j), cb * b.value_at(j));
      ++j;
    } else {
      t.push(a.rank_at(i), ca * a.value_at(i) + cb * b.value_at(j));
      ++i;
      ++j;
    }
  }
  return t;
}

template <Kind K>
double max_abs_diff(const SparseTensor<K>& a, const SparseTensor<K>& b) {
  double m = 0;
  std::size_t i = 0, j = 0;
  while (i < a.nnz() || j < b.nnz()) {
    if (j == b.nnz() || (i < a.nnz() && a.rank_at(i) < b.rank_at(j))) {
      m = std::max(m, std::abs(a.value_at(i++)));
    } else if (i == a.nnz() || b.rank_at(j) < a.rank_at(i)) {
      m = std::max(m, std::abs(b.value_at(j++)));
    } else {
      m = std::max(m, std::abs(a.value_at(i++) - b.value_at(j++)));
    }
  }
  return m;
}

struct Proportionality {
  double scale = 0;     // a ~= scale * b
  double residual = 0;  // max |a - scale*b|
};

// Ratio fitted at the largest entry of b, then max deviation over all entries.
template <Kind K>
Proportionality proportionality(const SparseTensor<K>& a, const SparseTensor<K>& b) {
  Proportionality p;
  if (b.empty()) {
    p.residual = a.max_abs();
    return p;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < b.nnz(); ++k)
    if (std::abs(b.value_at(k)) > std::abs(b.value_at(best))) best = k;
  p.scale = a.at_rank(b.rank_at(best)) / b.value_at(best);
  p.residual = max_abs_diff(a, b.scaled(p.scale));
  return p;
}

}  // namespace lieinv
