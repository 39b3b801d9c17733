#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cocycles.hpp"
#include "report.hpp"

namespace lieinv {

struct TTensorResult {
  SymTensor t;
  double symmetry_residual = 0;
  double trace_residual = 0;
};

// Max over canonical (m-2)-tuples of |sum_s t_{s s i3...im}|.
inline double trace_residual(const SymTensor& t) {
  const int m = t.order();
  if (m < 3) return 0.0;
  std::unordered_map<std::uint64_t, double> acc;
  Index rest(m - 2);
  t.for_each([&](const Index& k, double v) {
    for (int s = 0; s + 1 < m; ++s) {
      if (k[s] != k[s + 1] || (s > 0 && k[s - 1] == k[s])) continue;
      int o = 0;
      for (int u = 0; u < m; ++u)
        if (u != s && u != s + 1) rest[o++] = k[u];
      acc[rank_multiset(rest)] += v;
    }
  });
  double res = 0;
  for (auto& [k, v] : acc) res = std::max(res, std::abs(v));
  return res;
}

// t^{i1..i(m-1) im} = Omega^{j1..j(2m-2) im} C^{i1}_{j1j2} ... C^{i(m-1)}_{j(2m-3)j(2m-2)},
// scattered from the nonzero cocycle entries. Symmetry in the last slot is
// checked, not imposed.
inline TTensorResult t_tensor_checked(const AltTensor& omega, const AltTensor& f) {
  const int q = omega.order(), r = f.dim();
  if (q < 3 || q % 2 == 0) throw InvalidInput("t tensor needs an odd cocycle of order >= 3");
  const int m = (q + 1) / 2;
  PairTable c(f);
  PartialSym part(m, r);
  const double orient = detail::pow2(m - 1);
  Index S(q), R(q - 1), labels(m - 1), head(m - 1);
  for (std::size_t e = 0; e < omega.nnz(); ++e) {
    omega.unrank(omega.rank_at(e), S.data());
    const double w = omega.value_at(e);
    for (int t = 0; t < q; ++t) {
      int o = 0;
      for (int u = 0; u < q; ++u)
        if (u != t) R[o++] = S[u];
      const int s0 = ((q - 1 - t) % 2) ? -1 : 1;
      detail::for_each_matching(R, c, [&](const std::vector<std::pair<int, int>>& pairs, int sign) {
        detail::for_each_label(pairs, c, labels, 0, [&](const Index& lab, double cw) {
          std::copy(lab.begin(), lab.end(), head.begin());
          std::sort(head.begin(), head.end());
          part.add(head, S[t], s0 * sign * w * cw * orient * static_cast<double>(repeat_factorials(head)));
        });
      });
    }
  }
  auto fin = part.finish();
  TTensorResult res;
  res.t = fin.tensor;
  res.symmetry_residual = fin.symmetry_residual;
  res.trace_residual = trace_residual(res.t);
  return res;
}

inline SymTensor t_tensor(const AltTensor& omega, const AltTensor& f, double tol = 1e-8) {
  auto res = t_tensor_checked(omega, f);
  double scale = std::max(1.0, res.t.max_abs());
  if (res.symmetry_residual > tol * scale)
    throw ConstructionFailure("t tensor not symmetric: " + std::to_string(res.symmetry_residual));
  if (res.t.order() > 2 && res.trace_residual > tol * scale)
    throw ConstructionFailure("t tensor not traceless: " + std::to_string(res.trace_residual));
  return res.t;
}

// Full self-contraction: sum over canonical entries of multiplicity * value^2.
inline double k_scalar(const SymTensor& t) {
  double s = 0;
  t.for_each([&](const Index& k, double v) { s += static_cast<double>(multiplicity(k)) * v * v; });
  return s;
}

// Closed forms for K^(m)(n); m = 5 only predicts zero (m > n) or nonzero (NaN).
inline std::optional<double> closed_form_K(int m, int n) {
  const double n2 = static_cast<double>(n) * n;
  switch (m) {
    case 2: return n2 * (n2 - 1);
    case 3: return n * n2 * (n2 - 1) * (n2 - 4) / 144.0;
    case 4: return (1.0 / 14400.0) * (2.0 / 3.0) * n2 * (n2 + 1) * (n2 - 1) * (n2 - 4) * (n2 - 9);
    case 5: return m > n ? 0.0 : std::nan("");
    default: return std::nullopt;
  }
}

struct ScalarReport {
  std::string algebra;
  int m = 0;
  double K_value = 0;
  std::optional<double> closed_form_value;
  bool matched = false;
};

inline ScalarReport scalar_report(const std::string& label, int m, int n, const SymTensor& t,
                                  double zero_scale = 1.0, double rel_tol = 1e-7) {
  ScalarReport s;
  s.algebra = label;
  s.m = m;
  s.K_value = k_scalar(t);
  s.closed_form_value = closed_form_K(m, n);
  if (s.closed_form_value) {
    double cf = *s.closed_form_value;
    if (std::isnan(cf))
      s.matched = std::abs(s.K_value) > rel_tol * zero_scale;
    else if (cf == 0.0)
      s.matched = std::abs(s.K_value) < rel_tol * zero_scale;
    else
      s.matched = std::abs(std::abs(s.K_value) - std::abs(cf)) <= rel_tol * std::abs(cf);
  }
  return s;
}

// Partial contraction t^(m)_{I J} t^(l)_I over all l-tuples I; max |entry|.
inline double contraction_residual(const SymTensor& tl, const SymTensor& tm) {
  const int l = tl.order(), m = tm.order();
  if (l > m) return contraction_residual(tm, tl);
  std::unordered_map<std::uint64_t, double> acc;
  Index J(m - l);
  tm.for_each([&](const Index& K, double v) {
    std::vector<int> vals, cnt;
    for (int x : K) {
      if (!vals.empty() && vals.back() == x)
        ++cnt.back();
      else {
        vals.push_back(x);
        cnt.push_back(1);
      }
    }
    Index I;
    auto rec = [&](auto&& self, std::size_t p, int left) -> void {
      if (p == vals.size()) {
        if (left) return;
        double a = tl.at_canonical(I);
        if (a == 0.0) return;
        std::size_t i = 0;
        int o = 0;
        for (int x : K) {
          if (i < I.size() && I[i] == x)
            ++i;
          else
            J[o++] = x;
        }
        acc[rank_multiset(J)] += static_cast<double>(multiplicity(I)) * a * v;
        return;
      }
      for (int a = std::min(cnt[p], left); a >= 0; --a) {
        for (int t = 0; t < a; ++t) I.push_back(vals[p]);
        self(self, p + 1, left - a);
        I.resize(I.size() - a);
      }
    };
    rec(rec, 0, l);
  });
  double res = 0;
  for (auto& [k, x] : acc) res = std::max(res, std::abs(x));
  return res;
}

inline double orthogonality_check(const std::vector<SymTensor>& ts) {
  double res = 0;
  for (std::size_t a = 0; a < ts.size(); ++a)
    for (std::size_t b = 0; b < ts.size(); ++b) {
      if (ts[a].order() >= ts[b].order()) continue;
      if (ts[a].dim() != ts[b].dim()) throw InvalidInput("dimension mismatch");
      res = std::max(res, contraction_residual(ts[a], ts[b]));
    }
  return res;
}

// Sum over all orderings of a multiset of matrices, memoized by rank.
class OrderedProducts {
 public:
  explicit OrderedProducts(const std::vector<CMatrix>& x) : x_(x), n_(x.empty() ? 0 : static_cast<int>(x[0].rows())) {}

  // Q(A) = sum over all |A|! arrangements (repeated values counted separately)
  const CMatrix& all_orderings(const Index& a) {
    const int s = static_cast<int>(a.size());
    if (static_cast<int>(memo_.size()) <= s) memo_.resize(s + 1);
    auto rk = rank_multiset(a);
    auto it = memo_[s].find(rk);
    if (it != memo_[s].end()) return it->second;
    CMatrix acc = CMatrix::Zero(n_, n_);
    if (s == 0) {
      acc = CMatrix::Identity(n_, n_);
    } else {
      Index sub(s - 1);
      for (int p = 0; p < s; ++p) {
        if (p > 0 && a[p] == a[p - 1]) continue;
        int cnt = static_cast<int>(std::count(a.begin(), a.end(), a[p]));
        int o = 0;
        for (int u = 0; u < s; ++u)
          if (u != p) sub[o++] = a[u];
        acc += static_cast<double>(cnt) * (x_[a[p]] * all_orderings(sub));
      }
    }
    return memo_[s].emplace(rk, std::move(acc)).first->second;
  }

  // Signed sum over orderings of a strictly increasing tuple.
  const CMatrix& alternating(const Index& a) {
    const int s = static_cast<int>(a.size());
    if (static_cast<int>(alt_.size()) <= s) alt_.resize(s + 1);
    auto rk = rank_increasing(a);
    auto it = alt_[s].find(rk);
    if (it != alt_[s].end()) return it->second;
    CMatrix acc = CMatrix::Zero(n_, n_);
    if (s == 0) {
      acc = CMatrix::Identity(n_, n_);
    } else {
      Index sub(s - 1);
      for (int p = 0; p < s; ++p) {
        int o = 0;
        for (int u = 0; u < s; ++u)
          if (u != p) sub[o++] = a[u];
        acc += ((p % 2) ? -1.0 : 1.0) * (x_[a[p]] * alternating(sub));
      }
    }
    return alt_[s].emplace(rk, std::move(acc)).first->second;
  }

 private:
  const std::vector<CMatrix>& x_;
  int n_;
  std::vector<std::unordered_map<std::uint64_t, CMatrix>> memo_, alt_;
};

struct CasimirReport {
  CMatrix matrix;
  cplx scalar = 0;
  double off_scalar_residual = 0;
};

inline CasimirReport scalar_part(CMatrix m) {
  CasimirReport rep;
  const auto n = m.rows();
  rep.scalar = n ? m.trace() / static_cast<double>(n) : cplx(0);
  rep.off_scalar_residual = n ? (m - rep.scalar * CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() : 0.0;
  rep.matrix = std::move(m);
  return rep;
}

// h^{i1..im} X_i1 ... X_im, summed in increasing canonical-rank order.
inline CasimirReport casimir_matrix(const SymTensor& h, const std::vector<CMatrix>& rep) {
  const int n = rep.empty() ? 0 : static_cast<int>(rep[0].rows());
  OrderedProducts op(rep);
  CMatrix acc = CMatrix::Zero(n, n);
  h.for_each([&](const Index& k, double v) {
    acc += (v / static_cast<double>(repeat_factorials(k))) * op.all_orderings(k);
  });
  return scalar_part(std::move(acc));
}

// Omega^{j1..jq} X_j1 ... X_jq
inline CasimirReport cocycle_casimir(const AltTensor& omega, const std::vector<CMatrix>& rep) {
  const int n = rep.empty() ? 0 : static_cast<int>(rep[0].rows());
  OrderedProducts op(rep);
  CMatrix acc = CMatrix::Zero(n, n);
  omega.for_each([&](const Index& k, double v) { acc += v * op.alternating(k); });
  return scalar_part(std::move(acc));
}

// Representation on symmetric tensors of two copies of the defining rep.
inline std::vector<CMatrix> symmetric_square_rep(const std::vector<CMatrix>& x) {
  const int n = static_cast<int>(x[0].rows());
  const int d = n * (n + 1) / 2;
  CMatrix P = CMatrix::Zero(n * n, d);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++col) {
      double w = i == j ? 1.0 : 1.0 / std::sqrt(2.0);
      P(i * n + j, col) += w;
      if (i != j) P(j * n + i, col) += w;
    }
  std::vector<CMatrix> out;
  for (auto& a : x) {
    CMatrix k = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int t = 0; t < n; ++t) {
          k(i * n + j, t * n + j) += a(i, t);
          k(i * n + j, i * n + t) += a(j, t);
        }
    out.push_back(P.adjoint() * k * P);
  }
  return out;
}

struct RelationFit {
  std::string rep;
  double residual = 0;
  double fitted_b = 0;
};

// Checks C_hi = a C2 C_lo + b C_lo with the quadratic coefficient a fixed and
// b fitted once in the first representation, then reused in the others.
inline std::vector<IdentityReport> casimir_relation_check(int n, double tol = 1e-8) {
  if (n != 3 && n != 4) throw InvalidInput("Casimir relations are checked for su(3) and su(4)");
  auto g = build_algebra(AlgebraSpec::su(n));
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  const int r = g.dim();
  auto delta = delta_tensor(r);
  SymTensor hi = d_family(d, n == 3 ? 4 : 5);
  const SymTensor& lo = n == 3 ? delta : d;
  const double a = n == 3 ? 1.0 / 3.0 : 2.0 / 3.0;
  const double b_ref = n == 3 ? 1.0 / 6.0 : 2.0 / 3.0;

  std::vector<std::pair<std::string, std::vector<CMatrix>>> reps;
  reps.emplace_back("defining", g.matrices);
  std::vector<CMatrix> adj;
  for (auto& F : adjoint_F(f)) adj.push_back(cplx(0, 1) * F.cast<cplx>());
  reps.emplace_back("adjoint", adj);
  if (n == 4) reps.emplace_back("symmetric-square", symmetric_square_rep(g.matrices));

  std::vector<IdentityReport> out;
  double b = 0;
  bool fitted = false;
  const std::string label = g.spec.label;
  for (auto& [name, x] : reps) {
    CMatrix c2 = casimir_matrix(delta, x).matrix;
    CMatrix clo = n == 3 ? c2 : casimir_matrix(lo, x).matrix;
    CMatrix chi = casimir_matrix(hi, x).matrix;
    CMatrix lhs = chi - a * c2 * clo;
    if (!fitted) {
      cplx den = clo.trace();
      if (std::abs(den) > 1e-12) {
        b = (lhs.trace() / den).real();
        fitted = true;
      }
    }
    double res = (lhs - b * clo).cwiseAbs().maxCoeff();
    double nontrivial = clo.cwiseAbs().maxCoeff();
    std::string det = "fitted b=" + std::to_string(b) + " (b/b_ref=" + std::to_string(b / b_ref) +
                      "), |C_lo|max=" + std::to_string(nontrivial);
    out.push_back(make_report("casimir relation " + name, label, res, tol, det));
  }
  return out;
}

}  // namespace lieinv
