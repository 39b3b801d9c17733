#include <random>

#include <gtest/gtest.h>

#include <lieinv/duality.hpp>

#include "support/oracles.hpp"

using namespace lieinv;

namespace {

AltTensor random_form(int q, int r, std::uint64_t seed, double density = 0.6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  return tabulate_alternating(q, r, [&](const Index&) { return u(rng) < 2 * density - 1 ? u(rng) : 0.0; });
}

Index concat(const Index& a, const Index& b) {
  Index c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

// (1/q!) sum over ordered J of eps_{J L} a_J
double brute_hodge(const AltTensor& a, const Index& L) {
  double s = 0;
  oracle::for_each_tuple(a.order(), a.dim(), [&](const Index& J) { s += oracle::perm_sign(concat(J, L)) * a(J); });
  return s / oracle::factorial(a.order());
}

// (p+q)!/(p! q!) A[a b]
double brute_wedge(const AltTensor& a, const AltTensor& b, const Index& K) {
  const int p = a.order(), q = b.order();
  double v = oracle::antisymmetrize(K, [&](const Index& J) {
    return a(Index(J.begin(), J.begin() + p)) * b(Index(J.begin() + p, J.end()));
  });
  return v * oracle::factorial(p + q) / (oracle::factorial(p) * oracle::factorial(q));
}

// (1/(p! q!)) sum over ordered J, K of eps_{I J K} a_J b_K
double brute_epsilon(const AltTensor& a, const AltTensor& b, const Index& I) {
  double s = 0;
  oracle::for_each_tuple(a.order(), a.dim(), [&](const Index& J) {
    double av = a(J);
    if (av == 0.0) return;
    oracle::for_each_tuple(b.order(), b.dim(), [&](const Index& K) {
      s += oracle::perm_sign(concat(concat(I, J), K)) * av * b(K);
    });
  });
  return s / (oracle::factorial(a.order()) * oracle::factorial(b.order()));
}

template <class Fn>
void for_each_increasing(int q, int r, Fn&& fn) {
  Index I = first_increasing(q);
  if (q > r) return;
  do fn(static_cast<const Index&>(I));
  while (q > 0 && next_increasing(I, r));
}

}  // namespace

TEST(Hodge, MatchesLeviCivitaContraction) {
  for (int q = 1; q <= 4; ++q) {
    auto a = random_form(q, 6, 10 + q);
    auto h = hodge_dual(a);
    EXPECT_EQ(h.order(), 6 - q);
    for_each_increasing(6 - q, 6, [&](const Index& L) { EXPECT_NEAR(h(L), brute_hodge(a, L), 1e-13); });
  }
}

TEST(Hodge, DoubleDualSign) {
  for (int r : {5, 6, 7})
    for (int q = 1; q < r; ++q) {
      auto a = random_form(q, r, 100 * r + q);
      const double sign = (q * (r - q)) % 2 ? -1.0 : 1.0;
      EXPECT_LT(max_abs_diff(hodge_dual(hodge_dual(a)), a.scaled(sign)), 1e-14) << r << " " << q;
    }
}

TEST(Wedge, MatchesAntisymmetrizedProduct) {
  for (auto [p, q] : {std::pair{1, 2}, {2, 2}, {3, 2}, {1, 4}}) {
    auto a = random_form(p, 7, p);
    auto b = random_form(q, 7, 50 + q);
    auto w = wedge(a, b);
    for_each_increasing(p + q, 7, [&](const Index& K) { EXPECT_NEAR(w(K), brute_wedge(a, b, K), 1e-13); });
  }
}

TEST(Wedge, GradedCommutativityAndOverlap) {
  auto a = random_form(3, 8, 1), b = random_form(2, 8, 2), c = random_form(3, 8, 3);
  EXPECT_LT(max_abs_diff(wedge(a, b), wedge(b, a)), 1e-14);
  EXPECT_LT(max_abs_diff(wedge(a, c), wedge(c, a).scaled(-1)), 1e-14);
  EXPECT_LT(max_abs_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))), 1e-13);
  EXPECT_EQ(wedge(random_form(5, 8, 4), random_form(4, 8, 5)).nnz(), 0u);
  EXPECT_THROW(wedge(random_form(2, 5, 1), random_form(2, 6, 1)), InvalidInput);
}

TEST(Epsilon, MatchesLeviCivitaContraction) {
  auto a = random_form(2, 6, 21), b = random_form(2, 6, 22);
  auto e = epsilon_contraction({a, b});
  for_each_increasing(2, 6, [&](const Index& I) { EXPECT_NEAR(e(I), brute_epsilon(a, b, I), 1e-13); });
  EXPECT_THROW(epsilon_contraction({random_form(4, 6, 1), random_form(3, 6, 2)}), InvalidInput);
}

TEST(Epsilon, SingleFactorIsOrientedHodge) {
  for (int q = 1; q < 6; ++q) {
    auto a = random_form(q, 6, 30 + q);
    const double sign = (q * (6 - q)) % 2 ? -1.0 : 1.0;
    EXPECT_LT(max_abs_diff(epsilon_contraction({a}), hodge_dual(a).scaled(sign)), 1e-14);
  }
}

TEST(Duality, Su3FiveCocycleIsDualToStructureConstants) {
  auto g = build_algebra("su3");
  auto f = structure_constants(g);
  auto o5 = omega5(f, d_tensor(g));
  EXPECT_LT(max_abs_diff(epsilon_contraction({f}).scaled(1.0 / (2.0 * std::sqrt(3.0))), o5), 1e-14);
  EXPECT_LT(max_abs_diff(hodge_dual(f).scaled(-1.0 / (2.0 * std::sqrt(3.0))), o5), 1e-14);
}

TEST(Duality, Su4SevenCocycleIsDualToFiveAndThree) {
  auto g = build_algebra("su4");
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  auto o5 = omega5(f, d);
  auto o7 = omega7_su(f, d);
  EXPECT_LT(max_abs_diff(epsilon_contraction({o5, f}), o7.scaled(15.0 * std::sqrt(2.0))), 1e-12);
  EXPECT_LT(max_abs_diff(hodge_dual(wedge(o5, f)), o7.scaled(15.0 * std::sqrt(2.0))), 1e-12);
}

TEST(Duality, TowerReportsPass) {
  auto g = build_algebra("su3");
  auto f = structure_constants(g);
  auto o5 = cocycle_from_sym(f, sym_trace_tensor(g, 3));
  auto reports = check_duality({f, o5}, "su(3)");
  EXPECT_EQ(reports.size(), 3u);
  for (auto& r : reports) EXPECT_TRUE(r.pass) << r.name << " " << r.max_residual;
  EXPECT_THROW(check_duality({f}, "su(3)"), InvalidInput);
}

TEST(Inner, NormalizesToUnit) {
  auto a = random_form(3, 6, 9);
  EXPECT_NEAR(inner(normalize_cocycle(a), normalize_cocycle(a)), 1.0, 1e-14);
  EXPECT_THROW(normalize_cocycle(AltTensor(3, 6)), InvalidInput);
}
