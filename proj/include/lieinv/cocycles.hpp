#pragma once

#include <cmath>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "symmetrize.hpp"
#include "tensors.hpp"

namespace lieinv {

namespace detail {

// Perfect matchings of `elems` (pairing the first free element with each later
// one), skipping pairs with no structure constant. leaf(pairs, sign), where
// sign is the parity of the concatenated pair sequence relative to `elems`.
template <class Leaf>
void for_each_matching(std::span<const int> elems, const PairTable& c, Leaf&& leaf) {
  const int n = static_cast<int>(elems.size());
  if (n % 2) return;
  std::array<char, max_order> used{};
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n / 2);
  auto rec = [&](auto&& self, int sign) -> void {
    int a = 0;
    while (a < n && used[a]) ++a;
    if (a == n) {
      leaf(static_cast<const std::vector<std::pair<int, int>>&>(pairs), sign);
      return;
    }
    used[a] = 1;
    int between = 0;
    for (int b = a + 1; b < n; ++b) {
      if (used[b]) continue;
      if (!c(elems[a], elems[b]).empty()) {
        used[b] = 1;
        pairs.emplace_back(elems[a], elems[b]);
        self(self, (between % 2) ? -sign : sign);
        pairs.pop_back();
        used[b] = 0;
      }
      ++between;
    }
    used[a] = 0;
  };
  rec(rec, 1);
}

// Sum over labels l_k in C_{pair_k}^{l_k}: fn(labels, prod C).
template <class Fn>
void for_each_label(const std::vector<std::pair<int, int>>& pairs, const PairTable& c, Index& labels,
                    std::size_t offset, Fn&& fn) {
  auto rec = [&](auto&& self, std::size_t k, double w) -> void {
    if (k == pairs.size()) {
      fn(static_cast<const Index&>(labels), w);
      return;
    }
    for (auto [l, v] : c(pairs[k].first, pairs[k].second)) {
      labels[offset + k] = l;
      self(self, k + 1, w * v);
    }
  };
  rec(rec, 0, 1.0);
}

class DenseSym {
 public:
  explicit DenseSym(const SymTensor& h) : m_(h.order()), d_(h.to_dense()) {}
  double operator()(std::span<const int> idx) const {
    std::array<int, max_order> buf;
    std::copy(idx.begin(), idx.end(), buf.begin());
    std::sort(buf.begin(), buf.begin() + idx.size());
    return d_[rank_multiset(std::span<const int>(buf.data(), idx.size()))];
  }

 private:
  int m_;
  std::vector<double> d_;
};

inline double pow2(int k) { return std::ldexp(1.0, k); }

}  // namespace detail

// Reduced formula: Omega_{rho M sigma} = C_{rho[m1}^{l1} C_{m2 m3}^{l2} ... h_{l1...l(m-1) sigma}
// with unit-weight antisymmetrization over the 2m-3 middle slots.
class ReducedCocycle {
 public:
  ReducedCocycle(const PairTable& c, const SymTensor& h) : c_(c), h_(h), m_(h.order()) {}

  double value(int rho, std::span<const int> middle, int sigma) const {
    const int nm = static_cast<int>(middle.size());
    double total = 0;
    Index rest(nm - 1), labels(m_);
    labels[m_ - 1] = sigma;
    for (int p = 0; p < nm; ++p) {
      const auto& first = c_(rho, middle[p]);
      if (first.empty()) continue;
      int o = 0;
      for (int u = 0; u < nm; ++u)
        if (u != p) rest[o++] = middle[u];
      const int s0 = (p % 2) ? -1 : 1;
      detail::for_each_matching(rest, c_, [&](const std::vector<std::pair<int, int>>& pairs, int sign) {
        for (auto [l1, c1] : first) {
          labels[0] = l1;
          detail::for_each_label(pairs, c_, labels, 1, [&](const Index& lab, double w) {
            total += s0 * sign * c1 * w * h_(lab);
          });
        }
      });
    }
    return total * static_cast<double>(factorial(m_ - 2)) * detail::pow2(m_ - 2) /
           static_cast<double>(factorial(2 * m_ - 3));
  }

 private:
  const PairTable& c_;
  detail::DenseSym h_;
  int m_;
};

// Unit-weight antisymmetrization over all q = 2p+1 slots of
// C_{j1j2}^{l1} ... C_{j(2p-1)j(2p)}^{lp} H(l1..lp, j(2p+1)).
// With symmetric_labels, H must be symmetric in the l's and pair orderings
// are counted by weight instead of enumerated.
template <class H>
double full_antisym_value(std::span<const int> I, const PairTable& c, bool symmetric_labels, H&& hfun) {
  const int q = static_cast<int>(I.size());
  const int p = (q - 1) / 2;
  double total = 0;
  Index rest(q - 1), labels(p + 1);
  std::vector<int> order(p);
  for (int t = 0; t < q; ++t) {
    int o = 0;
    for (int u = 0; u < q; ++u)
      if (u != t) rest[o++] = I[u];
    const int s0 = ((q - 1 - t) % 2) ? -1 : 1;
    labels[p] = I[t];
    detail::for_each_matching(rest, c, [&](const std::vector<std::pair<int, int>>& pairs, int sign) {
      if (symmetric_labels) {
        detail::for_each_label(pairs, c, labels, 0, [&](const Index& lab, double w) {
          total += s0 * sign * w * hfun(lab);
        });
        return;
      }
      for (int k = 0; k < p; ++k) order[k] = k;
      std::vector<std::pair<int, int>> perm(p);
      do {
        for (int k = 0; k < p; ++k) perm[k] = pairs[order[k]];
        detail::for_each_label(perm, c, labels, 0, [&](const Index& lab, double w) {
          total += s0 * sign * w * hfun(lab);
        });
      } while (std::next_permutation(order.begin(), order.end()));
    });
  }
  double weight = detail::pow2(p) / static_cast<double>(factorial(q));
  if (symmetric_labels) weight *= static_cast<double>(factorial(p));
  return total * weight;
}

enum class CocycleMethod { reduced, full };

struct CocycleResult {
  AltTensor omega;
  double swap_residual = 0;  // max |Omega_{rho..sigma} + Omega_{sigma..rho}| and rho <-> i2
};

template <class Fn>
AltTensor tabulate_alternating(int q, int r, Fn&& value) {
  require_budget(AltTensor::capacity(q, r), "antisymmetric tensor");
  AltTensor t(q, r);
  if (q > r) return t;
  Index I = first_increasing(q);
  std::vector<std::pair<std::uint64_t, double>> e;
  do {
    double v = value(static_cast<const Index&>(I));
    if (std::abs(v) > drop_tolerance) e.emplace_back(rank_increasing(I), v);
  } while (next_increasing(I, r));
  std::sort(e.begin(), e.end());
  for (auto& [rk, v] : e) t.push(rk, v);
  return t;
}

inline CocycleResult cocycle_from_sym_checked(const AltTensor& f, const SymTensor& h,
                                              CocycleMethod method = CocycleMethod::reduced,
                                              double tol = default_tolerance) {
  const int m = h.order(), r = f.dim(), q = 2 * m - 1;
  if (m < 2) throw InvalidInput("cocycle needs a symmetric tensor of order >= 2");
  if (h.dim() != r) throw InvalidInput("dimension mismatch");
  PairTable c(f);
  double inv = invariance_residual(h, c);
  double hs = std::max(1.0, h.max_abs());
  if (inv > tol * hs) throw InvalidInput("symmetric tensor is not ad-invariant (residual " + std::to_string(inv) + ")");
  require_budget(AltTensor::capacity(q, r), "cocycle");
  CocycleResult res;
  if (method == CocycleMethod::full) {
    detail::DenseSym hd(h);
    res.omega = tabulate_alternating(q, r, [&](const Index& I) { return full_antisym_value(I, c, true, hd); });
    return res;
  }
  ReducedCocycle red(c, h);
  Index mid(q - 2);
  res.omega = tabulate_alternating(q, r, [&](const Index& I) {
    std::copy(I.begin() + 1, I.end() - 1, mid.begin());
    double v = red.value(I[0], mid, I[q - 1]);
    double swapped = red.value(I[q - 1], mid, I[0]);
    res.swap_residual = std::max(res.swap_residual, std::abs(v + swapped));
    if (q > 3) {
      mid[0] = I[0];
      double exch = red.value(I[1], mid, I[q - 1]);
      res.swap_residual = std::max(res.swap_residual, std::abs(v + exch));
    }
    return v;
  });
  return res;
}

inline AltTensor cocycle_from_sym(const AltTensor& f, const SymTensor& h,
                                  CocycleMethod method = CocycleMethod::reduced, double tol = default_tolerance) {
  auto res = cocycle_from_sym_checked(f, h, method, tol);
  if (res.swap_residual > tol * std::max(1.0, res.omega.max_abs()))
    throw ConstructionFailure("cocycle is not antisymmetric under rho <-> sigma: " + std::to_string(res.swap_residual));
  return res.omega;
}

// Omega_{i1..i5} = f^j_{i1[i2} f^k_{i3i4]} d_{jk i5}
inline AltTensor omega5(const AltTensor& f, const SymTensor& d) {
  if (d.order() != 3) throw InvalidInput("omega5 needs the order-3 d tensor");
  if (d.empty()) return AltTensor(5, f.dim());
  return cocycle_from_sym(f, d);
}

// Full antisymmetrization of C C C d4 with the unsymmetrized
// d4_{l1 l2 l3 g} = d_{l1 l2 s} d_{s l3 g}.
inline AltTensor omega7_su(const AltTensor& f, const SymTensor& d) {
  const int r = f.dim();
  if (d.order() == 4) {
    detail::DenseSym hd(d);
    PairTable c(f);
    return tabulate_alternating(7, r, [&](const Index& I) { return full_antisym_value(I, c, true, hd); });
  }
  if (d.order() != 3) throw InvalidInput("omega7_su needs d (order 3) or d4 (order 4)");
  if (d.empty()) return AltTensor(7, r);
  PairTable c(f);
  TripleRows rows(d);
  return tabulate_alternating(7, r, [&](const Index& I) {
    return full_antisym_value(I, c, false, [&](const Index& l) { return d4_chain(rows, l[0], l[1], l[2], l[3]); });
  });
}

namespace detail {

// Ordered set partitions of q slots into (J, pair_1, ..., pair_k, g), with J
// and each pair increasing and pair first elements increasing; sign is the
// parity of the concatenated slot sequence.
struct SplitPattern {
  std::vector<int> j;
  std::vector<std::pair<int, int>> pairs;
  int g = 0;
  int sign = 1;
};

inline std::vector<SplitPattern> recurrence_patterns(int q, int npairs) {
  std::vector<SplitPattern> out;
  std::vector<char> used(q, 0);
  std::vector<std::pair<int, int>> pairs;
  auto pick = [&](auto&& self, int k, int g, int min_first) -> void {
    if (k == npairs) {
      SplitPattern p;
      std::vector<int> seq;
      for (int u = 0; u < q; ++u)
        if (!used[u]) p.j.push_back(u);
      seq = p.j;
      for (auto [a, b] : pairs) {
        seq.push_back(a);
        seq.push_back(b);
      }
      seq.push_back(g);
      p.pairs = pairs;
      p.g = g;
      p.sign = permutation_sign(seq);
      out.push_back(std::move(p));
      return;
    }
    for (int a = min_first; a < q; ++a) {
      if (used[a]) continue;
      for (int b = a + 1; b < q; ++b) {
        if (used[b]) continue;
        used[a] = used[b] = 1;
        pairs.emplace_back(a, b);
        self(self, k + 1, g, a + 1);
        pairs.pop_back();
        used[a] = used[b] = 0;
      }
    }
  };
  for (int g = 0; g < q; ++g) {
    used[g] = 1;
    pick(pick, 0, g, 0);
    used[g] = 0;
  }
  return out;
}

}  // namespace detail

// Omega^(2m-1) = A[ Omega_prev_{J s} C^l_{ab} d_{s l g} ]
inline AltTensor recurrence_su(const AltTensor& prev, const AltTensor& f, const SymTensor& d) {
  const int r = f.dim(), qp = prev.order(), q = qp + 2;
  if (prev.dim() != r || d.dim() != r || d.order() != 3) throw InvalidInput("recurrence_su shape mismatch");
  PairTable c(f);
  TripleRows rows(d);
  const double weight = static_cast<double>(factorial(qp - 1)) * 2.0 / static_cast<double>(factorial(q));
  const auto patterns = detail::recurrence_patterns(q, 1);
  Index Js(qp);
  return tabulate_alternating(q, r, [&](const Index& I) {
    double total = 0;
    for (const auto& pat : patterns) {
      const auto& cl = c(I[pat.pairs[0].first], I[pat.pairs[0].second]);
      if (cl.empty()) continue;
      for (int u = 0; u < qp - 1; ++u) Js[u] = I[pat.j[u]];
      const int g = I[pat.g];
      for (auto [l, cv] : cl)
        for (auto [s, dv] : rows(l, g)) {
          Js[qp - 1] = s;
          double pv = prev(Js);
          if (pv != 0.0) total += pat.sign * cv * dv * pv;
        }
    }
    return total * weight;
  });
}

// Omega^(4p-1) = A[ Omega_prev_{J s} C^l1_{ab} C^l2_{cd} v_{s l1 l2 g} ]
inline AltTensor recurrence_bcd(const AltTensor& prev, const AltTensor& f, const SymTensor& v) {
  const int r = f.dim(), qp = prev.order(), q = qp + 4;
  if (prev.dim() != r || v.dim() != r || v.order() != 4) throw InvalidInput("recurrence_bcd shape mismatch");
  PairTable c(f);
  std::vector<std::vector<std::pair<int, double>>> vrows(count_multisets(r, 3));
  v.for_each([&](const Index& k, double x) {
    for (int s = 0; s < 4; ++s) {
      if (s > 0 && k[s] == k[s - 1]) continue;
      Index t;
      for (int u = 0; u < 4; ++u)
        if (u != s) t.push_back(k[u]);
      vrows[rank_multiset(t)].emplace_back(k[s], x);
    }
  });
  // the two pairs are interchangeable since v is symmetric
  const double weight = static_cast<double>(factorial(qp - 1)) * 8.0 / static_cast<double>(factorial(q));
  const auto patterns = detail::recurrence_patterns(q, 2);
  Index Js(qp);
  return tabulate_alternating(q, r, [&](const Index& I) {
    double total = 0;
    for (const auto& pat : patterns) {
      const auto& c1l = c(I[pat.pairs[0].first], I[pat.pairs[0].second]);
      if (c1l.empty()) continue;
      const auto& c2l = c(I[pat.pairs[1].first], I[pat.pairs[1].second]);
      if (c2l.empty()) continue;
      for (int u = 0; u < qp - 1; ++u) Js[u] = I[pat.j[u]];
      const int g = I[pat.g];
      for (auto [l1, c1] : c1l)
        for (auto [l2, c2] : c2l) {
          int t[3] = {l1, l2, g};
          std::sort(t, t + 3);
          for (auto [s, vv] : vrows[rank_multiset(t)]) {
            Js[qp - 1] = s;
            double pv = prev(Js);
            if (pv != 0.0) total += pat.sign * c1 * c2 * vv * pv;
          }
        }
    }
    return total * weight;
  });
}

// Max over (nu, I) of sum_s C_{nu I_s}^rho Omega_{I with I_s -> rho}.
inline double check_invariance(const AltTensor& t, const PairTable& c) {
  const int r = t.dim(), q = t.order();
  double res = 0;
  std::unordered_map<std::uint64_t, double> acc;
  Index J(q), I(q);
  for (int nu = 0; nu < r; ++nu) {
    acc.clear();
    for (std::size_t e = 0; e < t.nnz(); ++e) {
      t.unrank(t.rank_at(e), J.data());
      double w = t.value_at(e);
      for (int s = 0; s < q; ++s) {
        for (auto [i, fv] : c(nu, J[s])) {
          I = J;
          I[s] = i;
          int sign = sort_with_sign(I);
          if (sign == 0) continue;
          acc[rank_increasing(I)] += -fv * w * sign;
        }
      }
    }
    for (auto& [k, v] : acc) res = std::max(res, std::abs(v));
  }
  return res;
}

inline double check_invariance(const AltTensor& t, const AltTensor& f) { return check_invariance(t, PairTable(f)); }

// Max over increasing 2m-tuples of A[ C^{l1} ... C^{lm} h_{l1...lm} ].
inline double check_pullback_vanishes(const AltTensor& f, const SymTensor& h) {
  const int m = h.order(), r = f.dim(), q = 2 * m;
  if (q > r) return 0.0;
  require_budget(AltTensor::capacity(q, r), "pullback check");
  PairTable c(f);
  detail::DenseSym hd(h);
  const double weight = static_cast<double>(factorial(m)) * detail::pow2(m) / static_cast<double>(factorial(q));
  double res = 0;
  Index I = first_increasing(q), labels(m);
  do {
    double total = 0;
    detail::for_each_matching(I, c, [&](const std::vector<std::pair<int, int>>& pairs, int sign) {
      detail::for_each_label(pairs, c, labels, 0, [&](const Index& lab, double w) { total += sign * w * hd(lab); });
    });
    res = std::max(res, std::abs(total * weight));
  } while (next_increasing(I, r));
  return res;
}

}  // namespace lieinv
