#pragma once

#include <climits>
#include <cmath>
#include <string>
#include <vector>

#include "cocycles.hpp"
#include "duality.hpp"
#include "report.hpp"
#include "tensors.hpp"
#include "ttensors.hpp"

namespace lieinv {

struct TowerEntry {
  int m = 0;
  std::string source;  // "delta", "k" (symmetric trace) or "pf"
  bool built = false;
  std::string skip_reason;
  SymTensor h;
  AltTensor omega;
  SymTensor t;
};

struct Tower {
  GeneratorSet g;
  AltTensor f;
  std::vector<TowerEntry> entries;

  int dim() const { return g.dim(); }
  std::vector<AltTensor> cocycles() const {
    std::vector<AltTensor> out;
    for (auto& e : entries)
      if (e.built) out.push_back(e.omega);
    return out;
  }
  bool complete() const {
    for (auto& e : entries)
      if (!e.built) return false;
    return true;
  }
};

// Orders m_i of the primitive invariants: su(n) 2..n, B/C 2,4,..,2l, D_l
// 2,4,..,2l-2 and the Pfaffian order l.
inline std::vector<std::pair<int, std::string>> primitive_orders(const AlgebraSpec& s) {
  std::vector<std::pair<int, std::string>> out;
  const int l = s.rank;
  switch (s.family) {
    case Family::A:
      for (int m = 2; m <= l + 1; ++m) out.emplace_back(m, m == 2 ? "delta" : "k");
      break;
    case Family::B:
    case Family::C:
      for (int p = 1; p <= l; ++p) out.emplace_back(2 * p, p == 1 ? "delta" : "k");
      break;
    case Family::D:
      for (int p = 1; p < l; ++p) out.emplace_back(2 * p, p == 1 ? "delta" : "k");
      out.emplace_back(l, "pf");
      break;
  }
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

// h^(2) = delta (so Omega^(3) = f), h^(m) = symmetric trace of the defining
// matrices for m >= 3, Pfaffian tensor for the D-series extra invariant.
// Orders above max_m or over the complexity budget are recorded as skipped.
inline Tower build_tower(const GeneratorSet& g, int max_m = INT_MAX) {
  Tower tw;
  tw.g = g;
  tw.f = structure_constants(g);
  for (auto& [m, src] : primitive_orders(g.spec)) {
    TowerEntry e;
    e.m = m;
    e.source = src;
    if (m > max_m) {
      e.skip_reason = "order above requested maximum";
      tw.entries.push_back(std::move(e));
      continue;
    }
    try {
      if (src == "delta") {
        e.h = delta_tensor(g.dim());
        e.omega = tw.f;
      } else {
        e.h = src == "pf" ? pfaffian_tensor(g) : sym_trace_tensor(g, m);
        e.omega = cocycle_from_sym(tw.f, e.h);
      }
      e.t = t_tensor(e.omega, tw.f);
      e.built = true;
    } catch (const BudgetExceeded& ex) {
      e.skip_reason = ex.what();
    }
    tw.entries.push_back(std::move(e));
  }
  return tw;
}

// Cocycles built from symmetrized products of lower invariants must vanish.
inline std::vector<IdentityReport> nonprimitive_check(const GeneratorSet& g, double tol = default_tolerance) {
  auto f = structure_constants(g);
  const int r = g.dim();
  auto delta = delta_tensor(r);
  std::vector<IdentityReport> out;
  auto one = [&](const std::string& name, const SymTensor& h) {
    try {
      auto omega = cocycle_from_sym(f, h);
      out.push_back(make_report("non-primitive cocycle " + name + " vanishes", g.spec.label,
                                omega.max_abs() / std::max(1.0, h.max_abs()), tol));
    } catch (const BudgetExceeded& ex) {
      out.push_back(skipped_report("non-primitive cocycle " + name + " vanishes", g.spec.label, ex.what()));
    }
  };
  one("delta*delta", sym_product(delta, delta));
  if (g.spec.family == Family::A && g.n() >= 3) {
    auto d = d_tensor(g);
    one("delta*d", sym_product(delta, d));
    if (g.n() == 3) one("d4 (su(3))", d_family(d, 4));
  } else if (g.spec.family != Family::A) {
    auto k4 = sym_trace_tensor(g, 4);
    if (AltTensor::capacity(5, r) > 0) one("delta*k4", sym_product(delta, k4));
  }
  return out;
}

namespace detail {

inline double relative_zero(const SymTensor& t, double scale) { return t.max_abs() / std::max(1.0, scale); }

}  // namespace detail

// t^(4) on the ray n(n^2+1) d4 - 2(n^2-4) dd and t^(5) on the ray
// n(n^2+5) d5 - 2(3n^2-20) d delta, up to the global normalization.
inline std::vector<IdentityReport> t_explicit_check(int n, double tol = 1e-8) {
  if (n < 3 || n > 6) throw InvalidInput("explicit t-tensor check covers 3 <= n <= 6");
  auto g = build_algebra(AlgebraSpec::su(n));
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  const int r = g.dim();
  const double nn = n, n2 = nn * nn;
  const std::string label = g.spec.label;
  auto delta = delta_tensor(r);
  std::vector<IdentityReport> out;

  struct Ray {
    int m;
    SymTensor primary, secondary;
    double a, b;  // expected t ∝ a*primary + b*secondary
    std::string name;
  };
  std::vector<Ray> rays;
  rays.push_back({4, d_family(d, 4), sym_product(delta, delta), nn * (n2 + 1), -2 * (n2 - 4), "t4 = c[n(n^2+1) d4 - 2(n^2-4) dd]"});
  rays.push_back({5, d_family(d, 5), sym_product(d, delta), nn * (n2 + 5), -2 * (3 * n2 - 20), "t5 = c[n(n^2+5) d5 - 2(3n^2-20) d delta]"});

  for (auto& ray : rays) {
    SymTensor t;
    SymTensor h;
    try {
      h = sym_trace_tensor(g, ray.m);
      t = t_tensor(cocycle_from_sym(f, h), f);
    } catch (const BudgetExceeded& ex) {
      out.push_back(skipped_report(ray.name, label, ex.what()));
      continue;
    }
    auto combo = linear_combination(ray.primary, ray.a, ray.secondary, ray.b);
    const double scale = std::max({1.0, ray.primary.max_abs() * std::abs(ray.a), ray.secondary.max_abs() * std::abs(ray.b)});
    if (ray.m > n) {
      // the combination itself degenerates, and so does t
      out.push_back(make_report(ray.name + ": combination vanishes", label, combo.max_abs() / scale, tol));
      out.push_back(make_report(ray.name + ": t vanishes", label, detail::relative_zero(t, h.max_abs()), tol));
      continue;
    }
    VmBasis basis;
    basis.order = ray.m;
    basis.elements = {{"primary", ray.primary}, {"secondary", ray.secondary}};
    auto ex = expand_in_basis(t, basis);
    const double expected = ray.b / ray.a;
    const double ratio = ex.coefficients[1] / ex.coefficients[0];
    const double c = ex.coefficients[0] / ray.a;
    std::string det = "ratio=" + std::to_string(ratio) + " expected=" + std::to_string(expected) +
                      " global factor=" + std::to_string(c) + " fit residual=" + std::to_string(ex.residual);
    double res = std::max(std::abs(ratio - expected) / std::abs(expected), ex.residual / std::max(1.0, t.max_abs()));
    out.push_back(make_report(ray.name, label, res, tol, det));
    if (ray.m == 5) {
      // K^(5) = lambda^2 (n/3)(n^2+5) prod_{l=1..4}(n^2-l^2) with lambda the fitted factor
      double prod = 1;
      for (int l = 1; l <= 4; ++l) prod *= n2 - l * l;
      double predicted = c * c * nn / 3 * (n2 + 5) * prod;
      double K = k_scalar(t);
      out.push_back(make_report("K5 = lambda^2 (n/3)(n^2+5) prod(n^2-l^2)", label, std::abs(K - predicted) / std::abs(K), tol,
                                "K5=" + std::to_string(K) + " lambda=" + std::to_string(c)));
    }
  }
  return out;
}

}  // namespace lieinv
