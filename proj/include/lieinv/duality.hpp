#pragma once

#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "cocycles.hpp"
#include "report.hpp"
#include "sparse_tensor.hpp"

namespace lieinv {

// (*a)_L = sign(J, L) a_J, where J is the complement of L in {0..r-1}.
inline AltTensor hodge_dual(const AltTensor& a) {
  const int r = a.dim(), q = a.order();
  std::vector<std::pair<std::uint64_t, double>> e;
  Index comp;
  a.for_each([&](const Index& k, double v) {
    int sign = complement_with_sign(k, r, comp);
    e.emplace_back(rank_increasing(comp), sign * v);
  });
  std::sort(e.begin(), e.end());
  AltTensor out(r - q, r);
  for (auto& [rk, v] : e) out.push(rk, v);
  return out;
}

// Shuffle-sum wedge: (a ^ b)_K = sum over K = I + J of sign(I, J) a_I b_J.
// Index sets are handled as bit masks, so disjointness and the shuffle sign
// cost a few word operations per pair.
inline AltTensor wedge(const AltTensor& a, const AltTensor& b) {
  if (a.dim() != b.dim()) throw InvalidInput("wedge dimension mismatch");
  const int r = a.dim(), p = a.order(), q = b.order();
  if (p + q > r) return AltTensor(p + q, r);
  if (r > 64) throw InvalidInput("wedge supports dimension <= 64");
  auto masks = [](const AltTensor& t) {
    std::vector<std::uint64_t> m(t.nnz());
    Index k(t.order());
    for (std::size_t i = 0; i < t.nnz(); ++i) {
      t.unrank(t.rank_at(i), k.data());
      for (int x : k) m[i] |= std::uint64_t{1} << x;
    }
    return m;
  };
  const auto ma = masks(a), mb = masks(b);
  std::unordered_map<std::uint64_t, double> acc;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const std::uint64_t A = ma[i];
    for (std::size_t j = 0; j < mb.size(); ++j) {
      std::uint64_t B = mb[j];
      if (A & B) continue;
      // inversions of (I, J): pairs x in I, y in J with x > y
      int inv = 0;
      for (std::uint64_t rest = B; rest; rest &= rest - 1) {
        const int y = std::countr_zero(rest);
        inv += std::popcount(A >> y);
      }
      acc[A | B] += (inv & 1 ? -1.0 : 1.0) * a.value_at(i) * b.value_at(j);
    }
  }
  std::vector<std::pair<std::uint64_t, double>> e;
  e.reserve(acc.size());
  Index k(p + q);
  for (auto& [mask, v] : acc) {
    int o = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) k[o++] = std::countr_zero(rest);
    e.emplace_back(rank_increasing(k), v);
  }
  std::sort(e.begin(), e.end());
  AltTensor out(p + q, r);
  for (auto& [rk, v] : e) out.push(rk, v);
  return out;
}

// (1/prod q_k!) eps_{I J1 .. Jk} a1^{J1} .. ak^{Jk}, with the free indices I in
// front. Enumerated directly over ordered splits of each complement.
inline AltTensor epsilon_contraction(const std::vector<AltTensor>& factors) {
  if (factors.empty()) throw InvalidInput("epsilon contraction needs at least one factor");
  const int r = factors[0].dim();
  int used = 0;
  for (auto& a : factors) {
    if (a.dim() != r) throw InvalidInput("epsilon contraction dimension mismatch");
    used += a.order();
  }
  if (used > r) throw InvalidInput("epsilon contraction uses more indices than the dimension");
  const int q = r - used;
  Index comp, word(r), block;
  return tabulate_alternating(q, r, [&](const Index& I) {
    complement_with_sign(I, r, comp);
    std::copy(I.begin(), I.end(), word.begin());
    double total = 0;
    std::vector<char> taken(comp.size(), 0);
    auto rec = [&](auto&& self, std::size_t k, int pos, double acc) -> void {
      if (k == factors.size()) {
        total += permutation_sign(word) * acc;
        return;
      }
      const int o = factors[k].order();
      if (o > static_cast<int>(comp.size())) return;
      Index pick = first_increasing(o);
      do {
        block.clear();
        bool clash = false;
        for (int p : pick) {
          if (taken[p]) {
            clash = true;
            break;
          }
          block.push_back(comp[p]);
        }
        if (clash) continue;
        double v = factors[k].at_canonical(block);
        if (v == 0.0) continue;
        for (int p : pick) taken[p] = 1;
        std::copy(block.begin(), block.end(), word.begin() + pos);
        self(self, k + 1, pos + o, acc * v);
        for (int p : pick) taken[p] = 0;
      } while (next_increasing(pick, static_cast<int>(comp.size())));
    };
    rec(rec, 0, q, 1.0);
    return total;
  });
}

inline AltTensor wedge_all(const std::vector<AltTensor>& forms) {
  if (forms.empty()) throw InvalidInput("empty wedge");
  AltTensor w = forms[0];
  for (std::size_t i = 1; i < forms.size(); ++i) w = wedge(w, forms[i]);
  return w;
}

// Sum over increasing tuples of a_I b_I.
inline double inner(const AltTensor& a, const AltTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) throw InvalidInput("inner product shape mismatch");
  double s = 0;
  std::size_t i = 0, j = 0;
  while (i < a.nnz() && j < b.nnz()) {
    if (a.rank_at(i) < b.rank_at(j))
      ++i;
    else if (b.rank_at(j) < a.rank_at(i))
      ++j;
    else
      s += a.value_at(i++) * b.value_at(j++);
  }
  return s;
}

inline AltTensor normalize_cocycle(const AltTensor& a) {
  double n2 = inner(a, a);
  if (!(n2 > 0)) throw InvalidInput("cannot normalize a zero tensor");
  return a.scaled(1.0 / std::sqrt(n2));
}

// After normalization, every nonempty proper subset S of the tower satisfies
// wedge(S) = +-*(wedge(complement of S)). Each report carries the fitted sign.
inline std::vector<IdentityReport> check_duality(const std::vector<AltTensor>& cocycles, const std::string& label,
                                                 double tol = default_tolerance) {
  if (cocycles.empty()) throw InvalidInput("empty cocycle tower");
  const int r = cocycles[0].dim();
  int total = 0;
  for (auto& c : cocycles) total += c.order();
  if (total != r)
    throw InvalidInput("incomplete tower: orders sum to " + std::to_string(total) + ", dimension is " + std::to_string(r));
  std::vector<AltTensor> unit;
  for (auto& c : cocycles) unit.push_back(normalize_cocycle(c));
  std::vector<IdentityReport> out;
  const int l = static_cast<int>(unit.size());
  auto orders = [&](unsigned mask) {
    std::string s;
    for (int i = 0; i < l; ++i)
      if (mask & (1u << i)) s += (s.empty() ? "" : "^") + std::to_string(unit[i].order());
    return s;
  };
  if (l == 1) {
    // single cocycle: its dual is a 0-form, which must be +-1
    AltTensor d = hodge_dual(unit[0]);
    double v = d.nnz() ? d.value_at(0) : 0.0;
    out.push_back(make_report("dual of " + orders(1), label, std::abs(std::abs(v) - 1.0), tol,
                              "sign=" + std::to_string(v < 0 ? -1 : 1)));
    return out;
  }
  for (unsigned mask = 1; mask + 1 < (1u << l); ++mask) {
    std::vector<AltTensor> in, rest;
    for (int i = 0; i < l; ++i) (mask & (1u << i) ? in : rest).push_back(unit[i]);
    AltTensor lhs = wedge_all(in);
    AltTensor rhs = hodge_dual(wedge_all(rest));
    auto p = proportionality(lhs, rhs);
    double res = std::max(p.residual, std::abs(std::abs(p.scale) - 1.0));
    out.push_back(make_report(orders(mask) + " = *(" + orders(~mask & ((1u << l) - 1)) + ")", label, res, tol,
                              "sign=" + std::to_string(p.scale < 0 ? -1 : 1)));
  }
  AltTensor top = wedge_all(unit);
  double v = top.nnz() ? top.value_at(0) : 0.0;
  out.push_back(make_report("top form", label, std::abs(std::abs(v) - 1.0), tol,
                            "component=" + std::to_string(v)));
  return out;
}

}  // namespace lieinv
