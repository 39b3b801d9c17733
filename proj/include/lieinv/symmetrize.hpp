#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "index.hpp"
#include "sparse_tensor.hpp"

namespace lieinv {

// Unit-weight symmetrization of F over a canonical tuple I, where F takes an
// ordered list of blocks of the given sizes and is symmetric within each block:
//   S(I) = (1/m!) sum_perm F(I_perm)
// Only distinct block contents are enumerated, each with its permutation count.
template <class F>
double symmetrize_blocks(std::span<const int> I, std::span<const int> sizes, F&& eval) {
  const int m = static_cast<int>(I.size());
  std::vector<int> vals, cnt;
  for (int x : I) {
    if (!vals.empty() && vals.back() == x)
      ++cnt.back();
    else {
      vals.push_back(x);
      cnt.push_back(1);
    }
  }
  const int nv = static_cast<int>(vals.size());
  const int nb = static_cast<int>(sizes.size());
  std::vector<Index> blocks(nb);
  std::vector<int> rem = cnt;
  double total = 0;

  // choose block j, distinct value v, with w carrying the permutation count
  auto rec = [&](auto&& self, int j, int v, int left, double w) -> void {
    if (j == nb) {
      total += w * eval(static_cast<const std::vector<Index>&>(blocks));
      return;
    }
    if (left == 0) {
      int nj = j + 1;
      self(self, nj, 0, nj < nb ? sizes[nj] : 0, nj < nb ? w * static_cast<double>(factorial(sizes[nj])) : w);
      return;
    }
    if (v == nv) return;
    int avail = rem[v];
    for (int a = std::min(avail, left); a >= 0; --a) {
      for (int t = 0; t < a; ++t) blocks[j].push_back(vals[v]);
      rem[v] -= a;
      self(self, j, v + 1, left - a, w * static_cast<double>(binomial(avail, a)));
      rem[v] += a;
      blocks[j].resize(blocks[j].size() - a);
    }
  };
  if (nb == 0) return 0.0;
  rec(rec, 0, 0, sizes[0], static_cast<double>(factorial(sizes[0])));
  return total / static_cast<double>(factorial(m));
}

// Unit-weight symmetrized product Sym(T_1 x ... x T_k), by scattering over
// nonzero entries: each combination adds prod(value * mult) / mult(union).
inline SymTensor sym_product(const std::vector<const SymTensor*>& factors) {
  if (factors.empty()) throw InvalidInput("empty product");
  int m = 0;
  const int r = factors[0]->dim();
  for (auto* t : factors) {
    if (t->dim() != r) throw InvalidInput("dimension mismatch in product");
    m += t->order();
  }
  require_budget(SymTensor::capacity(m, r), "symmetrized product");
  std::vector<std::vector<double>> weights(factors.size());
  for (std::size_t f = 0; f < factors.size(); ++f) {
    factors[f]->for_each([&](const Index& k, double v) {
      weights[f].push_back(v * static_cast<double>(multiplicity(k)));
    });
  }
  Accumulator<Kind::sym> acc(m, r);
  Index cur;
  std::vector<Index> keys(factors.size());
  auto rec = [&](auto&& self, std::size_t f, double w) -> void {
    if (f == factors.size()) {
      Index u = cur;
      std::sort(u.begin(), u.end());
      acc.add(rank_multiset(u), w / static_cast<double>(multiplicity(u)));
      return;
    }
    const SymTensor& t = *factors[f];
    Index k(t.order());
    for (std::size_t e = 0; e < t.nnz(); ++e) {
      t.unrank(t.rank_at(e), k.data());
      cur.insert(cur.end(), k.begin(), k.end());
      self(self, f + 1, w * weights[f][e]);
      cur.resize(cur.size() - k.size());
    }
  };
  rec(rec, 0, 1.0);
  return acc.finish();
}

inline SymTensor sym_product(const SymTensor& a, const SymTensor& b) { return sym_product({&a, &b}); }

// Point evaluation of Sym(T_1 x ... x T_k) at a canonical tuple.
inline double sym_product_at(std::span<const int> I, const std::vector<const SymTensor*>& factors) {
  std::vector<int> sizes;
  for (auto* t : factors) sizes.push_back(t->order());
  return symmetrize_blocks(I, sizes, [&](const std::vector<Index>& blocks) {
    double p = 1;
    for (std::size_t j = 0; j < blocks.size() && p != 0.0; ++j) p *= factors[j]->at_canonical(blocks[j]);
    return p;
  });
}

inline SymTensor delta_tensor(int r) {
  SymTensor d(2, r);
  for (int i = 0; i < r; ++i) {
    int k[2] = {i, i};
    d.push(rank_multiset(k), 1.0);
  }
  return d;
}

// Builds a symmetric tensor from point values over all canonical tuples.
template <class F>
SymTensor tabulate_symmetric(int m, int r, F&& value) {
  require_budget(SymTensor::capacity(m, r), "symmetric tensor");
  SymTensor t(m, r);
  Index I(m, 0);
  std::vector<std::pair<std::uint64_t, double>> e;
  if (m == 0) return t;
  do {
    double v = value(static_cast<const Index&>(I));
    if (std::abs(v) > drop_tolerance) e.emplace_back(rank_multiset(I), v);
  } while (next_multiset(I, r));
  std::sort(e.begin(), e.end());
  for (auto& [rk, v] : e) t.push(rk, v);
  return t;
}

// Max |t - Sym(t)|, where Sym re-averages over distinct permutations.
inline double symmetrization_defect(const SymTensor& t) {
  double res = 0;
  std::vector<int> sizes(t.order(), 1);
  t.for_each([&](const Index& k, double v) {
    double s = symmetrize_blocks(k, sizes, [&](const std::vector<Index>& b) {
      Index seq;
      for (auto& x : b) seq.push_back(x[0]);
      return t(seq);
    });
    res = std::max(res, std::abs(s - v));
  });
  return res;
}

// Symmetric tensor assembled from a tensor stored with its first m-1 indices
// canonical and the last index separate; symmetry in the last slot is checked.
class PartialSym {
 public:
  PartialSym(int order, int dim) : m_(order), r_(dim) {}
  int order() const { return m_; }
  int dim() const { return r_; }

  void add(std::span<const int> head_canonical, int last, double v) {
    map_[rank_multiset(head_canonical) * static_cast<std::uint64_t>(r_) + last] += v;
  }
  double get(std::span<const int> head_canonical, int last) const {
    auto it = map_.find(rank_multiset(head_canonical) * static_cast<std::uint64_t>(r_) + last);
    return it == map_.end() ? 0.0 : it->second;
  }

  struct Result {
    SymTensor tensor;
    double symmetry_residual = 0;
  };

  Result finish() const {
    std::vector<std::pair<std::uint64_t, double>> keys(map_.begin(), map_.end());
    std::sort(keys.begin(), keys.end());
    Result res{SymTensor(m_, r_), 0.0};
    std::unordered_map<std::uint64_t, double> out;
    Index head(m_ - 1), full(m_), rest(m_ - 1);
    for (auto& [key, v] : keys) {
      if (std::abs(v) <= drop_tolerance) continue;
      unrank_multiset(key / r_, m_ - 1, head.data());
      int last = static_cast<int>(key % r_);
      std::copy(head.begin(), head.end(), full.begin());
      full[m_ - 1] = last;
      std::sort(full.begin(), full.end());
      for (int s = 0; s < m_; ++s) {
        if (s > 0 && full[s] == full[s - 1]) continue;
        int o = 0;
        for (int u = 0; u < m_; ++u)
          if (u != s) rest[o++] = full[u];
        res.symmetry_residual = std::max(res.symmetry_residual, std::abs(get(rest, full[s]) - v));
      }
      if (full[m_ - 1] == last) out[rank_multiset(full)] = v;
    }
    res.tensor = SymTensor::from_map(m_, r_, out);
    return res;
  }

 private:
  int m_, r_;
  std::unordered_map<std::uint64_t, double> map_;
};

}  // namespace lieinv
