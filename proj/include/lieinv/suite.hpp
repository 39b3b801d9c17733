#pragma once

#include <string>
#include <vector>

#include "cocycles.hpp"
#include "duality.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "report.hpp"
#include "tensors.hpp"
#include "towers.hpp"
#include "ttensors.hpp"

namespace lieinv {

struct SuiteOptions {
  double tolerance = default_tolerance;
  std::uint64_t seed = 42;
  int trials = 20;
  bool identities = true;  // f, d trace identities (su(n), n <= 6)
};

namespace detail {

inline double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

inline std::string cocycle_name(const TowerEntry& e) {
  return "Omega(" + std::to_string(2 * e.m - 1) + (e.source == "pf" ? ",pf" : "") + ")";
}

inline void append(std::vector<IdentityReport>& out, std::vector<IdentityReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

// Wedge products pair every nonzero of one factor with every nonzero of the
// other; allowed up to 100 pair operations per budgeted entry.
inline std::uint64_t duality_cost(const std::vector<AltTensor>& cs) {
  std::uint64_t worst = 0;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) worst = std::max<std::uint64_t>(worst, cs[i].nnz() * cs[j].nnz());
  return worst;
}

}  // namespace detail

inline std::vector<IdentityReport> tower_reports(const Tower& tw, double tol) {
  std::vector<IdentityReport> out;
  const std::string label = tw.g.spec.label;
  const int n = tw.g.n();
  PairTable c(tw.f);
  std::vector<const TowerEntry*> built;
  int order_sum = 0;
  for (auto& e : tw.entries) {
    order_sum += 2 * e.m - 1;
    const std::string name = detail::cocycle_name(e);
    if (!e.built) {
      out.push_back(skipped_report(name + " construction", label, e.skip_reason));
      continue;
    }
    built.push_back(&e);
    const double hs = e.h.max_abs(), os = e.omega.max_abs();
    out.push_back(make_report("h(" + std::to_string(e.m) + ") ad-invariance", label,
                              detail::rel(invariance_residual(e.h, c), hs), tol));
    try {
      out.push_back(make_report("antisymmetrized C..C h vanishes for h(" + std::to_string(e.m) + ")", label,
                                detail::rel(check_pullback_vanishes(tw.f, e.h), hs), tol));
    } catch (const BudgetExceeded& ex) {
      out.push_back(skipped_report("antisymmetrized C..C h vanishes for h(" + std::to_string(e.m) + ")", label, ex.what()));
    }
    out.push_back(make_report(name + " invariance", label, detail::rel(check_invariance(e.omega, c), os), tol,
                              std::to_string(e.omega.nnz()) + " nonzero coordinates"));
    auto tt = t_tensor_checked(e.omega, tw.f);
    const double ts = tt.t.max_abs();
    out.push_back(make_report("t(" + std::to_string(e.m) + ") symmetry", label, detail::rel(tt.symmetry_residual, ts), tol));
    if (e.m > 2)
      out.push_back(make_report("t(" + std::to_string(e.m) + ") traceless", label, detail::rel(tt.trace_residual, ts), tol));
    if (tw.g.spec.family == Family::A && e.m <= 5) {
      auto s = scalar_report(label, e.m, n, e.t, std::max(1.0, hs * hs));
      std::string det = "K=" + format_double(s.K_value);
      if (s.closed_form_value && !std::isnan(*s.closed_form_value)) det += " closed form=" + format_double(*s.closed_form_value);
      IdentityReport r = make_report("K(" + std::to_string(e.m) + ") closed form", label, s.matched ? 0.0 : 1.0, 0.5, det);
      r.tolerance = 1e-7;
      r.max_residual = s.closed_form_value && !std::isnan(*s.closed_form_value) && *s.closed_form_value != 0.0
                           ? std::abs(std::abs(s.K_value) - std::abs(*s.closed_form_value)) / std::abs(*s.closed_form_value)
                           : (s.matched ? 0.0 : 1.0);
      r.pass = s.matched;
      out.push_back(r);
    }
  }
  // lower-order t contracted into higher-order t vanishes
  for (std::size_t i = 0; i < built.size(); ++i)
    for (std::size_t j = 0; j < built.size(); ++j) {
      const auto &a = *built[i], &b = *built[j];
      if (a.m >= b.m) continue;
      const double scale = a.t.max_abs() * b.t.max_abs();
      out.push_back(make_report("t(" + std::to_string(a.m) + (a.source == "pf" ? ",pf" : "") + ") orthogonal to t(" +
                                    std::to_string(b.m) + (b.source == "pf" ? ",pf" : "") + ")",
                                label, detail::rel(contraction_residual(a.t, b.t), scale), tol));
    }
  out.push_back(make_report("sum of cocycle orders = dim", label, std::abs(order_sum - tw.dim()), 0.5,
                            std::to_string(order_sum) + " vs " + std::to_string(tw.dim())));
  if (!tw.complete()) {
    out.push_back(skipped_report("duality relations", label, "tower incomplete"));
  } else {
    auto cs = tw.cocycles();
    if (detail::duality_cost(cs) > 100 * budget())
      out.push_back(skipped_report("duality relations", label, "wedge cost exceeds budget"));
    else
      detail::append(out, check_duality(cs, label, tol));
  }
  return out;
}

inline std::vector<IdentityReport> su_reports(const Tower& tw, const SuiteOptions& opt) {
  std::vector<IdentityReport> out;
  const int n = tw.g.n();
  const std::string label = tw.g.spec.label;
  const double tol = opt.tolerance;
  if (n < 3) return out;
  auto d = d_tensor(tw.g);
  out.push_back(make_report("d ad-invariance", label, invariance_residual(d, tw.f), tol));
  auto o5 = omega5(tw.f, d);
  const TowerEntry* e3 = nullptr;
  const TowerEntry* e4 = nullptr;
  for (auto& e : tw.entries) {
    if (e.m == 3 && e.built) e3 = &e;
    if (e.m == 4 && e.built) e4 = &e;
  }
  if (e3) {
    auto p = proportionality(o5, e3->omega);
    out.push_back(make_report("Omega(5) from f,d proportional to tower Omega(5)", label, detail::rel(p.residual, o5.max_abs()), tol,
                              "scale=" + format_double(p.scale)));
  }
  out.push_back(make_report("Omega(5) from f,d invariance", label, detail::rel(check_invariance(o5, tw.f), o5.max_abs()), tol,
                            std::to_string(o5.nnz()) + " nonzero coordinates"));
  auto r5 = recurrence_su(tw.f, tw.f, d);
  auto p5 = proportionality(r5, o5);
  out.push_back(make_report("recurrence Omega(3) -> Omega(5)", label, detail::rel(p5.residual, r5.max_abs()), tol,
                            "scale=" + format_double(p5.scale)));
  try {
    auto r7 = recurrence_su(o5, tw.f, d);
    if (n == 3) {
      out.push_back(make_report("recurrence past the tower vanishes", label, r7.max_abs(), tol));
    } else {
      auto o7 = omega7_su(tw.f, d);
      auto p7 = proportionality(r7, o7);
      out.push_back(make_report("recurrence Omega(5) -> Omega(7)", label, detail::rel(p7.residual, r7.max_abs()), tol,
                                "scale=" + format_double(p7.scale)));
      out.push_back(make_report("Omega(7) from f,d invariance", label, detail::rel(check_invariance(o7, tw.f), o7.max_abs()), tol,
                                std::to_string(o7.nnz()) + " nonzero coordinates"));
      if (e4) {
        auto p = proportionality(o7, e4->omega);
        out.push_back(make_report("Omega(7) from f,d proportional to tower Omega(7)", label, detail::rel(p.residual, o7.max_abs()),
                                  tol, "scale=" + format_double(p.scale)));
      }
    }
  } catch (const BudgetExceeded& ex) {
    out.push_back(skipped_report("recurrence Omega(5) -> Omega(7)", label, ex.what()));
  }
  if (n <= 6) {
    if (opt.identities) {
      TraceSuiteOptions to;
      to.tolerance = std::max(tol, 1e-8);
      to.seed = opt.seed;
      detail::append(out, trace_identity_suite(n, to));
    }
    detail::append(out, t_explicit_check(n, std::max(tol, 1e-8)));
  }
  if (n == 3 || n == 4) {
    // Casimir operators in the defining and adjoint representations
    // hermitian forms for the Casimir scalars, Lie-algebra forms for C'
    std::vector<CMatrix> adj, adj_lie = complexify(adjoint_F(tw.f)), def_lie = lie_rep(tw.g);
    for (auto& F : adj_lie) adj.push_back(cplx(0, 1) * F);
    for (auto& e : tw.entries) {
      if (!e.built) continue;
      auto cd = casimir_matrix(e.h, tw.g.matrices), ca = casimir_matrix(e.h, adj);
      out.push_back(make_report("C(" + std::to_string(e.m) + ") scalar, defining", label, cd.off_scalar_residual, tol,
                                "scalar=" + format_double(cd.scalar.real())));
      out.push_back(make_report("C(" + std::to_string(e.m) + ") scalar, adjoint", label, ca.off_scalar_residual, tol,
                                "scalar=" + format_double(ca.scalar.real())));
      if (2 * e.m - 1 <= 7) {
        auto cp = cocycle_casimir(e.omega, def_lie);
        auto ct = casimir_matrix(e.t, def_lie);
        double res = (cp.matrix - ct.matrix / detail::pow2(e.m - 1)).cwiseAbs().maxCoeff();
        out.push_back(make_report("C'(" + std::to_string(e.m) + ") = t X..X / 2^(m-1)", label,
                                  detail::rel(res, ct.matrix.cwiseAbs().maxCoeff()), tol));
      }
    }
    // first vanishing generalized Casimir C'(n+1)
    auto h = sym_trace_tensor(tw.g, n + 1);
    auto omega = cocycle_from_sym(tw.f, h);
    for (const auto* rep : {&def_lie, &adj_lie}) {
      auto cp = cocycle_casimir(omega, *rep);
      out.push_back(make_report("C'(" + std::to_string(n + 1) + ") vanishes, " + (rep == &adj_lie ? "adjoint" : "defining"), label,
                                cp.matrix.cwiseAbs().maxCoeff(), tol));
    }
    detail::append(out, casimir_relation_check(n, std::max(tol, 1e-8)));
  }
  return out;
}

inline std::vector<IdentityReport> bcd_reports(const Tower& tw, const SuiteOptions& opt) {
  std::vector<IdentityReport> out;
  const std::string label = tw.g.spec.label;
  const double tol = opt.tolerance;
  auto vr = v_tensor(tw.g, tol);
  const double vs = vr.v.max_abs();
  out.push_back(make_report("v closure", label, vr.closure_residual, tol));
  out.push_back(make_report("v symmetry", label, detail::rel(vr.symmetry_residual, vs), tol));
  out.push_back(make_report("v ad-invariance", label, detail::rel(invariance_residual(vr.v, tw.f), vs), tol));
  const TowerEntry* e4 = nullptr;
  for (auto& e : tw.entries)
    if (e.m == 4 && e.source == "k" && e.built) e4 = &e;
  if (e4) {
    try {
      auto r7 = recurrence_bcd(tw.f, tw.f, vr.v);
      auto p = proportionality(r7, e4->omega);
      out.push_back(make_report("recurrence Omega(3) -> Omega(7)", label, detail::rel(p.residual, r7.max_abs()), tol,
                                "scale=" + format_double(p.scale)));
    } catch (const BudgetExceeded& ex) {
      out.push_back(skipped_report("recurrence Omega(3) -> Omega(7)", label, ex.what()));
    }
  }
  return out;
}

// Full property suite for an already built tower.
inline std::vector<IdentityReport> verify_tower(const Tower& tw, const SuiteOptions& opt = {}) {
  std::vector<IdentityReport> out;
  const auto& g = tw.g;
  const std::string label = g.spec.label;
  const double tol = opt.tolerance;
  out.push_back(make_report("generator conventions", label, generator_residual(g), tol));
  out.push_back(make_report("commutators close on f", label, commutation_residual(lie_rep(g), tw.f), tol));
  out.push_back(make_report("adjoint matrices satisfy [F,F] = f F", label,
                            commutation_residual(complexify(adjoint_F(tw.f)), tw.f), tol));
  detail::append(out, tower_reports(tw, tol));
  detail::append(out, nonprimitive_check(g, tol));
  if (g.spec.family == Family::A)
    detail::append(out, su_reports(tw, opt));
  else
    detail::append(out, bcd_reports(tw, opt));
  detail::append(out, cayley_hamilton_check(g, opt.trials, opt.seed, std::max(tol, 1e-8)));
  return out;
}

inline std::vector<IdentityReport> verify_algebra(const AlgebraSpec& spec, const SuiteOptions& opt = {}) {
  return verify_tower(build_tower(build_algebra(spec)), opt);
}

}  // namespace lieinv
