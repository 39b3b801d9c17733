#include <map>
#include <random>

#include <gtest/gtest.h>

#include <lieinv/identities.hpp>

#include "support/oracles.hpp"

using namespace lieinv;

namespace {

CMatrix random_element(const GeneratorSet& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto lam = random_lambda(g.dim(), rng);
  CMatrix M = CMatrix::Zero(g.n(), g.n());
  for (int i = 0; i < g.dim(); ++i) M += lam[i] * g.matrices[i];
  return M;
}

}  // namespace

TEST(Partitions, CountsAndClassSizes) {
  const std::vector<std::size_t> p = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int N = 1; N <= 8; ++N) {
    auto parts = integer_partitions(N);
    EXPECT_EQ(parts.size(), p[N]);
    double total = 0;
    for (auto& q : parts) total += cauchy_class_size(q);
    EXPECT_DOUBLE_EQ(total, static_cast<double>(factorial(N)));
  }
  EXPECT_EQ(integer_partitions(6, true).size(), 3u);
  EXPECT_EQ(integer_partitions(5, true).size(), 0u);
}

TEST(Partitions, ClassSizesMatchPermutationCount) {
  // count permutations of S5 by cycle type
  std::map<std::vector<int>, int> counts;
  oracle::for_each_perm(5, [&](const std::vector<int>& s) {
    std::vector<int> seen(5, 0), type;
    for (int i = 0; i < 5; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = s[j]) {
        seen[j] = 1;
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    counts[type] += 1;
    EXPECT_EQ(cycle_sign(type), oracle::perm_sign(s));
  });
  for (auto& q : integer_partitions(5)) EXPECT_DOUBLE_EQ(cauchy_class_size(q), counts[q]);
}

TEST(PartitionSum, EqualsElementarySymmetricPolynomial) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  CMatrix M(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = cplx(nd(rng), nd(rng));
  for (int k = 1; k <= 5; ++k) {
    auto s = partition_sum(M, k, false);
    EXPECT_NEAR(std::abs(s.value - oracle::elementary_symmetric(M, k)), 0.0, 1e-10) << k;
  }
  EXPECT_NEAR(std::abs(partition_sum(M, 4, false).value - M.determinant()), 0.0, 1e-10);
}

TEST(PartitionSum, EvenPartsSufficeForBcd) {
  for (auto sel : {"so5", "sp3", "so8"}) {
    auto g = build_algebra(sel);
    auto M = random_element(g, 17);
    for (int k : {2, 4, 6}) {
      auto s = partition_sum(M, k, true);
      EXPECT_NEAR(std::abs(s.value - oracle::elementary_symmetric(M, k)), 0.0, 1e-9) << sel << " " << k;
    }
  }
}

TEST(CayleyHamilton, HoldsForAllFamilies) {
  for (auto sel : {"su2", "su3", "su4", "su5", "so5", "so7", "sp3", "so8"}) {
    auto reports = cayley_hamilton_check(build_algebra(sel), 10, 42);
    for (auto& r : reports) EXPECT_TRUE(r.pass) << sel << " " << r.name << " " << r.max_residual;
  }
  auto d = cayley_hamilton_check(build_algebra("so8"), 3);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].name, "partition identity order 8");
  EXPECT_EQ(d[1].name, "det = Pf^2");
  EXPECT_EQ(cayley_hamilton_check(build_algebra("su3"), 2)[0].name, "partition identity order 4");
  EXPECT_THROW(cayley_hamilton_check(build_algebra("su3"), 0), InvalidInput);
}

TEST(CayleyHamilton, OrderNSumDoesNotVanish) {
  // the identity is sharp: e_n of a generic traceless matrix is its determinant
  auto g = build_algebra("su3");
  auto M = random_element(g, 5);
  auto s = partition_sum(M, 3, false);
  EXPECT_GT(std::abs(s.value), 1e-3);
  EXPECT_NEAR(std::abs(s.value - M.determinant()), 0.0, 1e-12);
}

TEST(TraceIdentities, DenseContractions) {
  for (int n : {3, 4, 5}) {
    auto g = build_algebra(AlgebraSpec::su(n));
    auto f = structure_constants(g);
    auto d = d_tensor(g);
    const int r = g.dim();
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        double ff = 0, dd = 0, fd = 0;
        for (int c = 0; c < r; ++c)
          for (int e = 0; e < r; ++e) {
            ff += f({a, c, e}) * f({b, c, e});
            dd += d({a, c, e}) * d({b, c, e});
            fd += f({a, c, e}) * d({b, c, e});
          }
        EXPECT_NEAR(ff, a == b ? n : 0.0, 1e-12);
        EXPECT_NEAR(dd, a == b ? (n * n - 4.0) / n : 0.0, 1e-12);
        EXPECT_NEAR(fd, 0.0, 1e-12);
      }
  }
}

TEST(TraceIdentities, SuiteSmallN) {
  for (int n : {3, 4}) {
    auto reports = trace_identity_suite(n);
    EXPECT_GT(reports.size(), 20u);
    for (auto& r : reports) EXPECT_TRUE(r.pass) << "n=" << n << " " << r.name << " " << r.max_residual;
  }
  EXPECT_THROW(trace_identity_suite(2), InvalidInput);
  EXPECT_THROW(trace_identity_suite(7), InvalidInput);
}

TEST(TraceIdentities, SuiteFailsAtImpossibleTolerance) {
  TraceSuiteOptions opt;
  opt.tolerance = 1e-300;
  bool any_fail = false;
  for (auto& r : trace_identity_suite(3, opt)) any_fail |= !r.pass;
  EXPECT_TRUE(any_fail);
}
