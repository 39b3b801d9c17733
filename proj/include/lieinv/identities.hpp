#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "report.hpp"
#include "tensors.hpp"
#include "ttensors.hpp"

namespace lieinv {

// Partitions of N in nonincreasing part order; optionally even parts only.
inline std::vector<std::vector<int>> integer_partitions(int N, bool even_only = false) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, max_part); k >= 1; --k) {
      if (even_only && k % 2) continue;
      cur.push_back(k);
      self(self, left - k, k);
      cur.pop_back();
    }
  };
  rec(rec, N, N);
  return out;
}

// prod_k k^nu_k nu_k!, the centralizer order of the cycle type.
inline double centralizer_order(const std::vector<int>& parts) {
  double z = 1;
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    const int nu = static_cast<int>(j - i);
    z *= std::pow(static_cast<double>(parts[i]), nu) * static_cast<double>(factorial(nu));
    i = j;
  }
  return z;
}

// Number of permutations of cycle type `parts`: N!/prod(k^nu nu!).
inline double cauchy_class_size(const std::vector<int>& parts) {
  int N = 0;
  for (int k : parts) N += k;
  return static_cast<double>(factorial(N)) / centralizer_order(parts);
}

// (-1)^(nu_2 + nu_4 + ...)
inline int cycle_sign(const std::vector<int>& parts) {
  int s = 1;
  for (int k : parts)
    if (k % 2 == 0) s = -s;
  return s;
}

struct PartitionSum {
  cplx value = 0;
  double scale = 0;  // sum of absolute term magnitudes
};

// sum over partitions of sign / z * prod_k Tr(M^k)^nu_k
inline PartitionSum partition_sum(const CMatrix& M, int N, bool even_only) {
  std::vector<cplx> p(N + 1, 0.0);
  CMatrix power = CMatrix::Identity(M.rows(), M.cols());
  for (int k = 1; k <= N; ++k) {
    power = power * M;
    p[k] = power.trace();
  }
  PartitionSum s;
  for (auto& parts : integer_partitions(N, even_only)) {
    cplx term = static_cast<double>(cycle_sign(parts)) / centralizer_order(parts);
    for (int k : parts) term *= p[k];
    s.value += term;
    s.scale += std::abs(term);
  }
  return s;
}

inline std::vector<double> random_lambda(int r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> lam(r);
  for (auto& x : lam) x = u(rng);
  return lam;
}

// For su(n) the order n+1 identity, for B/C order 2l+2 (even parts); these
// vanish. For D_l the order 2l sum equals det M = Pf(M)^2.
inline std::vector<IdentityReport> cayley_hamilton_check(const GeneratorSet& g, int trials, std::uint64_t seed = 42,
                                                         double tol = 1e-8) {
  if (trials < 1) throw InvalidInput("trials must be positive");
  std::mt19937_64 rng(seed);
  const int n = g.n(), r = g.dim(), l = g.spec.rank;
  const Family fam = g.spec.family;
  const bool even = fam != Family::A;
  const int N = fam == Family::A ? n + 1 : fam == Family::D ? 2 * l : 2 * l + 2;
  double worst = 0, worst_pf = 0;
  for (int t = 0; t < trials; ++t) {
    auto lam = random_lambda(r, rng);
    CMatrix M = CMatrix::Zero(n, n);
    for (int i = 0; i < r; ++i) M += lam[i] * g.matrices[i];
    auto s = partition_sum(M, N, even);
    if (fam == Family::D) {
      RMatrix Mr = M.real();
      double pf = pfaffian(Mr);
      double det = Mr.determinant();
      worst = std::max(worst, std::abs(s.value - pf * pf) / s.scale);
      worst_pf = std::max(worst_pf, std::abs(det - pf * pf) / std::abs(det));
    } else {
      worst = std::max(worst, std::abs(s.value) / s.scale);
    }
  }
  std::vector<IdentityReport> out;
  const std::string name = "partition identity order " + std::to_string(N);
  out.push_back(make_report(name, g.spec.label, worst, tol, std::to_string(trials) + " trials, seed " + std::to_string(seed)));
  if (fam == Family::D)
    out.push_back(make_report("det = Pf^2", g.spec.label, worst_pf, tol, "relative to |det|"));
  return out;
}

namespace detail {

// Dense r^4 array T[a][b][c][d] = sum_x P_abx Q_cdx for order-3 tensors given
// as lookups.
class Quartic {
 public:
  Quartic(int r, const std::function<double(int, int, int)>& p, const std::function<double(int, int, int)>& q) : r_(r) {
    Eigen::MatrixXd P(r * r, r), Q(r * r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int x = 0; x < r; ++x) {
          P(a * r + b, x) = p(a, b, x);
          Q(a * r + b, x) = q(a, b, x);
        }
    m_ = P * Q.transpose();
  }
  double operator()(int a, int b, int c, int d) const { return m_(a * r_ + b, c * r_ + d); }

 private:
  int r_;
  Eigen::MatrixXd m_;
};

// M[(ab),(cd)] = Tr(A_a B_b C_c D_d)
inline Eigen::MatrixXd four_fold_trace(const std::vector<RMatrix>& A, const std::vector<RMatrix>& B,
                                       const std::vector<RMatrix>& C, const std::vector<RMatrix>& D) {
  const int r = static_cast<int>(A.size());
  Eigen::MatrixXd L(r * r, r * r), R(r * r, r * r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      RMatrix ab = A[a] * B[b];
      RMatrix cd = C[a] * D[b];
      for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
          L(a * r + b, x * r + y) = ab(x, y);
          R(y * r + x, a * r + b) = cd(x, y);
        }
    }
  return L * R;
}

inline double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace detail

struct TraceSuiteOptions {
  double tolerance = 1e-8;
  std::uint64_t seed = 42;
  std::size_t six_fold_samples = 100000;
  bool full_six_fold = false;  // force full enumeration for every n
};

inline std::vector<IdentityReport> trace_identity_suite(int n, const TraceSuiteOptions& opt = {}) {
  if (n < 3 || n > 6) throw InvalidInput("trace identity suite covers 3 <= n <= 6");
  auto g = build_algebra(AlgebraSpec::su(n));
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  const int r = g.dim();
  const double nn = n, n2 = nn * nn;
  const std::string label = g.spec.label;
  const double tol = opt.tolerance;
  auto F = adjoint_F(f);
  auto D = adjoint_D(d);
  auto fl = [&](int a, int b, int c) { return f({a, b, c}); };
  auto dl = [&](int a, int b, int c) { return d({a, b, c}); };
  std::vector<IdentityReport> out;
  using detail::delta;

  // two- and three-fold traces
  {
    double r1 = 0, r2 = 0, r3 = 0, r4 = 0, r5 = 0, r6 = 0, r7 = 0;
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        r1 = std::max(r1, std::abs((F[a] * F[b]).trace() + nn * delta(a, b)));
        r2 = std::max(r2, std::abs((F[a] * D[b]).trace()));
        r3 = std::max(r3, std::abs((D[a] * D[b]).trace() - (n2 - 4) / nn * delta(a, b)));
        RMatrix ff = F[a] * F[b], fd = F[a] * D[b], dd = D[a] * D[b];
        for (int c = 0; c < r; ++c) {
          r4 = std::max(r4, std::abs((ff * F[c]).trace() + nn / 2 * fl(a, b, c)));
          r5 = std::max(r5, std::abs((ff * D[c]).trace() + nn / 2 * dl(a, b, c)));
          r6 = std::max(r6, std::abs((fd * D[c]).trace() - (n2 - 4) / (2 * nn) * fl(a, b, c)));
          r7 = std::max(r7, std::abs((dd * D[c]).trace() - (n2 - 12) / (2 * nn) * dl(a, b, c)));
        }
      }
    out.push_back(make_report("Tr FF = -n delta", label, r1, tol));
    out.push_back(make_report("Tr FD = 0", label, r2, tol));
    out.push_back(make_report("Tr DD = (n^2-4)/n delta", label, r3, tol));
    out.push_back(make_report("Tr FFF = -n/2 f", label, r4, tol));
    out.push_back(make_report("Tr FFD = -n/2 d", label, r5, tol));
    out.push_back(make_report("Tr FDD = (n^2-4)/(2n) f", label, r6, tol));
    out.push_back(make_report("Tr DDD = (n^2-12)/(2n) d", label, r7, tol));
  }

  // four-fold traces, all r^4 index tuples
  detail::Quartic dd(r, dl, dl), df(r, dl, fl), fd(r, fl, dl);
  auto FFFF = detail::four_fold_trace(F, F, F, F);
  auto FFFD = detail::four_fold_trace(F, F, F, D);
  auto FFDD = detail::four_fold_trace(F, F, D, D);
  auto FDFD = detail::four_fold_trace(F, D, F, D);
  auto FDDD = detail::four_fold_trace(F, D, D, D);
  auto DDDD = detail::four_fold_trace(D, D, D, D);
  std::vector<std::pair<std::string, std::function<double(int, int, int, int)>>> four = {
      {"Tr FFFF",
       [&](int a, int b, int c, int e) {
         return FFFF(a * r + b, c * r + e) -
                (delta(a, b) * delta(c, e) + delta(a, e) * delta(b, c) +
                 nn / 4 * (dd(a, b, c, e) + dd(a, e, b, c) - dd(a, c, b, e)));
       }},
      {"Tr FFFD",
       [&](int a, int b, int c, int e) {
         return FFFD(a * r + b, c * r + e) - (-nn / 4 * df(a, b, c, e) - nn / 4 * fd(a, b, c, e));
       }},
      {"Tr FFDD",
       [&](int a, int b, int c, int e) {
         return FFDD(a * r + b, c * r + e) -
                ((4 - n2) / n2 * (delta(a, b) * delta(c, e) - delta(a, c) * delta(b, e)) +
                 (8 - n2) / (4 * nn) * (dd(a, b, c, e) - dd(a, c, b, e)) - nn / 4 * dd(a, e, b, c));
       }},
      {"Tr FDFD",
       [&](int a, int b, int c, int e) {
         return FDFD(a * r + b, c * r + e) -
                (nn / 4 * (dd(a, c, b, e) - dd(a, e, b, c)) - nn / 4 * dd(a, b, c, e));
       }},
      {"Tr FDDD",
       [&](int a, int b, int c, int e) {
         return FDDD(a * r + b, c * r + e) -
                ((n2 - 12) / (4 * nn) * fd(a, b, c, e) + nn / 4 * df(a, b, c, e) +
                 1 / nn * (fd(a, e, b, c) - fd(a, c, b, e)));
       }},
      {"Tr DDDD",
       [&](int a, int b, int c, int e) {
         return DDDD(a * r + b, c * r + e) -
                ((n2 - 4) / n2 * (delta(a, b) * delta(c, e) + delta(a, e) * delta(b, c)) - nn / 4 * dd(a, c, b, e) +
                 (n2 - 16) / (4 * nn) * (dd(a, b, c, e) + dd(a, e, b, c)));
       }},
  };
  for (auto& [name, diff] : four) {
    double res = 0;
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c)
          for (int e = 0; e < r; ++e) res = std::max(res, std::abs(diff(a, b, c, e)));
    out.push_back(make_report(name, label, res, tol));
  }

  // contractions of the four-fold identities with d_ace and f_ace
  {
    struct Item {
      std::string name;
      const Eigen::MatrixXd* lhs;
      std::function<double(int, int, int, int)> diff;
    };
    std::vector<Item> items = {{"Tr FFFF", &FFFF, four[0].second},
                               {"Tr FFDD", &FFDD, four[2].second},
                               {"Tr DDDD", &DDDD, four[5].second}};
    for (auto& it : items)
      for (int which = 0; which < 2; ++which) {
        const AltTensor* ft = which ? &f : nullptr;
        double res = 0;
        for (int b = 0; b < r; ++b)
          for (int e = 0; e < r; ++e)
            for (int x = 0; x < r; ++x) {
              double s = 0;
              for (int a = 0; a < r; ++a)
                for (int c = 0; c < r; ++c) {
                  double w = ft ? f({a, c, x}) : d({a, c, x});
                  if (w != 0.0) s += w * it.diff(a, b, c, e);
                }
              res = std::max(res, std::abs(s));
            }
        out.push_back(make_report(it.name + (which ? " contracted with f_ace" : " contracted with d_ace"), label, res, tol));
      }
  }

  auto delta2 = delta_tensor(r);
  auto dd4 = d_family(d, 4);
  auto deltadelta = sym_product(delta2, delta2);
  auto sym4 = [&](const Eigen::MatrixXd& M) {
    std::vector<int> ones(4, 1);
    return tabulate_symmetric(4, r, [&](const Index& I) {
      return symmetrize_blocks(I, ones, [&](const std::vector<Index>& b) {
        return M(b[0][0] * r + b[1][0], b[2][0] * r + b[3][0]);
      });
    });
  };
  auto symF4 = sym4(FFFF), symD4 = sym4(DDDD);
  out.push_back(make_report("Tr F_(aFFF_d) = n/4 d4 + 2 dd", label,
                            max_abs_diff(symF4, linear_combination(dd4, nn / 4, deltadelta, 2.0)), tol));
  out.push_back(make_report("Tr D_(aDDD_d) = (n^2-32)/(4n) d4 + 2(n^2-4)/n^2 dd", label,
                            max_abs_diff(symD4, linear_combination(dd4, (n2 - 32) / (4 * nn), deltadelta, 2 * (n2 - 4) / n2)),
                            tol));
  if (n == 3) {
    out.push_back(make_report("su(3) Tr F_(aFFF_d) = 9/4 dd", label, max_abs_diff(symF4, deltadelta.scaled(9.0 / 4)), tol));
    out.push_back(make_report("su(3) Tr D_(aDDD_d) = 17/36 dd", label, max_abs_diff(symD4, deltadelta.scaled(17.0 / 36)), tol));
    double res = 0;
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c)
          for (int e = 0; e < r; ++e) {
            double rhs = 5.0 / 9 * (delta(a, b) * delta(c, e) + delta(a, e) * delta(b, c)) -
                         7.0 / 12 * deltadelta({a, b, c, e}) - 1.0 / 6 * dd(a, c, b, e);
            res = std::max(res, std::abs(DDDD(a * r + b, c * r + e) - rhs));
          }
    out.push_back(make_report("su(3) Tr DDDD", label, res, tol));
  }

  // five-fold symmetrized trace over all canonical tuples
  TripleRows rows(d);
  auto dd5 = d_family(d, 5);
  auto ddelta = sym_product(d, delta2);
  {
    auto trD5 = sym_trace_tensor(D, 5);
    out.push_back(make_report("Tr D_(a...D_e) = (n^2-80)/(8n) d5 + (3n^2-20)/n^2 d delta", label,
                              max_abs_diff(trD5, linear_combination(dd5, (n2 - 80) / (8 * nn), ddelta, (3 * n2 - 20) / n2)),
                              tol));
    if (n == 3)
      out.push_back(make_report("su(3) Tr D_(a...D_e) = -5/24 d delta", label, max_abs_diff(trD5, ddelta.scaled(-5.0 / 24)), tol));
    if (n == 4)
      out.push_back(make_report("su(4) Tr D_(a...D_e) = 5/12 d delta", label, max_abs_diff(trD5, ddelta.scaled(5.0 / 12)), tol));
  }

  // six-fold symmetrized trace
  {
    SymTraceEvaluator<RMatrix> ev(D, 6);
    std::vector<const SymTensor*> ddd = {&delta2, &delta2, &delta2};
    std::vector<const SymTensor*> dpair = {&d, &d};
    std::vector<const SymTensor*> deld4 = {&delta2, &dd4};
    const std::vector<int> three_pairs = {2, 2, 2};
    auto ytensor = [&](const Index& I) {
      return symmetrize_blocks(I, three_pairs, [&](const std::vector<Index>& b) {
        double s = 0;
        for (auto [x, u] : rows(b[0][0], b[0][1]))
          for (auto [y, v] : rows(b[1][0], b[1][1]))
            for (auto [z, w] : rows(x, y))
              for (auto [z2, w2] : rows(b[2][0], b[2][1]))
                if (z == z2) s += u * v * w * w2;
        return s;
      });
    };
    const double c1 = 4 * (n2 - 4) / (n2 * nn), c2 = (n2 - 192) / (16 * nn), c3 = 0.75 * (3 * n2 - 64) / n2,
                 c4 = (5 * n2 + 48) / (4 * n2);
    double res = 0, six_fold_rel = 0;
    std::size_t count = 0;
    auto check = [&](const Index& I) {
      double t1 = sym_product_at(I, ddd), t2 = ytensor(I), t3 = sym_product_at(I, deld4), t4 = sym_product_at(I, dpair);
      double lhs = ev.value(I);
      res = std::max(res, std::abs(lhs - (c1 * t1 + c2 * t2 + c3 * t3 + c4 * t4)));
      double d6 = d_family_at(rows, I);
      six_fold_rel = std::max(six_fold_rel, std::abs(t2 - d6 - 2 / nn * (t4 - t3)));
      ++count;
    };
    if (n <= 4 || opt.full_six_fold) {
      Index I(6, 0);
      do check(I);
      while (next_multiset(I, r));
    } else {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<int> u(0, r - 1);
      Index I(6);
      for (std::size_t s = 0; s < opt.six_fold_samples; ++s) {
        for (auto& x : I) x = u(rng);
        std::sort(I.begin(), I.end());
        check(I);
      }
    }
    const std::string how = std::to_string(count) + (n <= 4 || opt.full_six_fold ? " canonical tuples" : " sampled tuples");
    out.push_back(make_report("Tr D_(a...D_f) six-fold expansion", label, res, tol, how));
    out.push_back(make_report("d(dd)d - d6 chain = 2/n (dd - delta d4)", label, six_fold_rel, tol, how));
  }

  // scalars
  {
    double dsq = k_scalar(d);
    out.push_back(make_report("d_ijk d_ijk = (n^2-1)(n^2-4)/n", label, std::abs(dsq - (n2 - 1) * (n2 - 4) / nn), tol,
                              "value=" + std::to_string(dsq)));
    double d5sq = k_scalar(dd5);
    double expect = (n2 - 4) * (n2 - 1) / (15 * n2 * nn) * (5 * n2 * n2 - 96 * n2 + 480);
    out.push_back(make_report("d5.d5 = (n^2-4)(n^2-1)(5n^4-96n^2+480)/(15n^3)", label, std::abs(d5sq - expect), tol,
                              "value=" + std::to_string(d5sq)));
  }
  return out;
}

}  // namespace lieinv
