#include <set>

#include <gtest/gtest.h>

#include <lieinv/index.hpp>
#include <lieinv/sparse_tensor.hpp>

#include "support/oracles.hpp"

using namespace lieinv;

TEST(Index, IncreasingRanksAreABijection) {
  for (int r : {5, 8}) {
    for (int q = 1; q <= 4; ++q) {
      std::set<std::uint64_t> seen;
      oracle::for_each_tuple(q, r, [&](const Index& I) {
        for (int k = 1; k < q; ++k)
          if (I[k] <= I[k - 1]) return;
        auto rk = rank_increasing(I);
        EXPECT_LT(rk, count_increasing(r, q));
        Index back(q);
        unrank_increasing(rk, q, back.data());
        EXPECT_EQ(back, I);
        seen.insert(rk);
      });
      EXPECT_EQ(seen.size(), count_increasing(r, q));
    }
  }
}

TEST(Index, MultisetRanksAreABijection) {
  const int r = 6;
  for (int m = 1; m <= 4; ++m) {
    std::set<std::uint64_t> seen;
    oracle::for_each_tuple(m, r, [&](const Index& I) {
      for (int k = 1; k < m; ++k)
        if (I[k] < I[k - 1]) return;
      auto rk = rank_multiset(I);
      Index back(m);
      unrank_multiset(rk, m, back.data());
      EXPECT_EQ(back, I);
      seen.insert(rk);
    });
    EXPECT_EQ(seen.size(), count_multisets(r, m));
  }
}

TEST(Index, SuccessorsVisitEveryTupleOnce) {
  Index a = first_increasing(3);
  std::uint64_t n = 1;
  while (next_increasing(a, 7)) ++n;
  EXPECT_EQ(n, binomial(7, 3));
  Index b(3, 0);
  n = 1;
  while (next_multiset(b, 5)) ++n;
  EXPECT_EQ(n, count_multisets(5, 3));
}

TEST(Index, SortSignMatchesInversionCount) {
  oracle::for_each_tuple(4, 4, [&](const Index& I) {
    Index c = I;
    EXPECT_EQ(sort_with_sign(c), oracle::perm_sign(I));
  });
}

TEST(Index, MultiplicityCountsDistinctOrderings) {
  oracle::for_each_tuple(4, 3, [&](const Index& I) {
    if (!std::is_sorted(I.begin(), I.end())) return;
    std::set<Index> orderings;
    oracle::for_each_perm(4, [&](const std::vector<int>& p) {
      orderings.insert({I[p[0]], I[p[1]], I[p[2]], I[p[3]]});
    });
    EXPECT_EQ(multiplicity(I), orderings.size());
  });
}

TEST(Index, BinomialBasics) {
  EXPECT_EQ(binomial(8, 3), 56u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(factorial(6), 720u);
}

TEST(SparseTensor, AlternatingLookupCarriesSign) {
  auto t = AltTensor::from_entries(3, 5, {{{0, 2, 4}, 1.5}});
  EXPECT_DOUBLE_EQ(t({0, 2, 4}), 1.5);
  EXPECT_DOUBLE_EQ(t({2, 0, 4}), -1.5);
  EXPECT_DOUBLE_EQ(t({4, 2, 0}), -1.5);
  EXPECT_DOUBLE_EQ(t({2, 4, 0}), 1.5);
  EXPECT_DOUBLE_EQ(t({0, 0, 4}), 0.0);
}

TEST(SparseTensor, SymmetricLookupIgnoresOrder) {
  auto t = SymTensor::from_entries(3, 4, {{{1, 1, 3}, 2.0}});
  EXPECT_DOUBLE_EQ(t({3, 1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(t({1, 3, 1}), 2.0);
  EXPECT_EQ(t.nnz(), 1u);
}

TEST(SparseTensor, FromEntriesSumsDuplicatesAndRejectsBadInput) {
  auto t = AltTensor::from_entries(2, 3, {{{0, 1}, 1.0}, {{1, 0}, 0.25}});
  EXPECT_DOUBLE_EQ(t({0, 1}), 0.75);
  EXPECT_THROW(AltTensor::from_entries(2, 3, {{{1, 1}, 1.0}}), InvalidInput);
  EXPECT_THROW(AltTensor::from_entries(2, 3, {{{0, 3}, 1.0}}), InvalidInput);
  AltTensor u(2, 3);
  u.push(2, 1.0);
  EXPECT_THROW(u.push(1, 1.0), InvalidInput);
}

TEST(SparseTensor, LinearAlgebra) {
  auto a = SymTensor::from_entries(2, 3, {{{0, 0}, 1.0}, {{1, 2}, 2.0}});
  auto b = SymTensor::from_entries(2, 3, {{{1, 2}, 4.0}, {{2, 2}, 1.0}});
  auto c = linear_combination(a, 2.0, b, -1.0);
  EXPECT_DOUBLE_EQ(c({0, 0}), 2.0);
  EXPECT_DOUBLE_EQ(c({2, 1}), 0.0);
  EXPECT_DOUBLE_EQ(c({2, 2}), -1.0);
  EXPECT_EQ(c.nnz(), 2u);
  EXPECT_DOUBLE_EQ(max_abs_diff(a, b), 2.0);
  auto p = proportionality(a.scaled(-3.0), a);
  EXPECT_DOUBLE_EQ(p.scale, -3.0);
  EXPECT_NEAR(p.residual, 0.0, 1e-15);
  auto dense = a.to_dense();
  EXPECT_EQ(SymTensor::from_dense(2, 3, dense), a);
}

TEST(SparseTensor, BudgetGuardsDenseViews) {
  AltTensor big(6, 100);
  EXPECT_THROW(big.to_dense(), BudgetExceeded);
}
