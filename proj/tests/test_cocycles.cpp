#include <random>

#include <gtest/gtest.h>

#include <lieinv/cocycles.hpp>
#include <lieinv/symmetrize.hpp>

#include "support/oracles.hpp"
#include "support/golden_tables.hpp"

using namespace lieinv;

namespace {

const std::string& reference_text() {
  static const std::string text = golden::read_file(std::string(LIEINV_SOURCE_DIR) + "/paper.md");
  return text;
}

// A[ f_{i1 i2 l1} ... f_{i(2m-3) i(2m-2) l(m-1)} h_{l1..l(m-1) iq} ] by
// permutation sum and dense label loops.
double brute_cocycle(const AltTensor& f, const SymTensor& h, const Index& I) {
  const int r = f.dim(), p = h.order() - 1;
  return oracle::antisymmetrize(I, [&](const Index& J) {
    double s = 0;
    Index labels(p + 1);
    labels[p] = J[2 * p];
    oracle::for_each_tuple(p, r, [&](const Index& L) {
      double w = 1;
      for (int k = 0; k < p && w != 0; ++k) w *= f({J[2 * k], J[2 * k + 1], L[k]});
      if (w == 0) return;
      std::copy(L.begin(), L.end(), labels.begin());
      s += w * h(labels);
    });
    return s;
  });
}

std::vector<Index> sample_tuples(const AltTensor& omega, int count, std::uint64_t seed) {
  std::vector<Index> out;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count && omega.nnz(); ++k) out.push_back(omega.key_at(rng() % omega.nnz()));
  std::uniform_int_distribution<int> pick(0, omega.dim() - 1);
  while (static_cast<int>(out.size()) < 2 * count) {
    Index I;
    while (static_cast<int>(I.size()) < omega.order()) {
      int v = pick(rng);
      if (std::find(I.begin(), I.end(), v) == I.end()) I.push_back(v);
    }
    std::sort(I.begin(), I.end());
    out.push_back(I);
  }
  return out;
}

void expect_table(const AltTensor& omega, const std::vector<golden::Entry>& table) {
  for (auto& e : table) {
    Index I;
    for (int i : e.index) I.push_back(i - 1);
    EXPECT_NEAR(omega(I), e.value, 1e-12) << e.text;
  }
}

}  // namespace

TEST(Cocycle, QuadraticInvariantGivesStructureConstants) {
  for (auto sel : {"su3", "so5"}) {
    auto g = build_algebra(sel);
    auto f = structure_constants(g);
    EXPECT_LT(max_abs_diff(cocycle_from_sym(f, delta_tensor(g.dim())), f), 1e-13) << sel;
  }
}

TEST(Cocycle, ReducedFormulaMatchesPermutationSum) {
  auto g = build_algebra("su3");
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  auto omega = cocycle_from_sym(f, d);
  Index I = first_increasing(5);
  do EXPECT_NEAR(omega(I), brute_cocycle(f, d, I), 1e-13);
  while (next_increasing(I, 8));
}

TEST(Cocycle, SevenCocycleMatchesPermutationSumOnSamples) {
  for (auto sel : {"su4", "so5"}) {
    auto g = build_algebra(sel);
    auto f = structure_constants(g);
    auto h = sym_trace_tensor(g, 4);
    auto omega = cocycle_from_sym(f, h);
    for (auto& I : sample_tuples(omega, 4, 3)) EXPECT_NEAR(omega(I), brute_cocycle(f, h, I), 1e-12) << sel;
  }
}

TEST(Cocycle, ReducedAndFullMethodsAgree) {
  for (auto [sel, m] : {std::pair{"su4", 3}, {"su4", 4}, {"so5", 4}}) {
    auto g = build_algebra(sel);
    auto f = structure_constants(g);
    auto h = sym_trace_tensor(g, m);
    auto a = cocycle_from_sym(f, h, CocycleMethod::reduced);
    auto b = cocycle_from_sym(f, h, CocycleMethod::full);
    EXPECT_LT(max_abs_diff(a, b), 1e-12) << sel << " m=" << m;
  }
}

TEST(Cocycle, IsInvariantAndPullbackVanishes) {
  for (auto [sel, m] : {std::pair{"su3", 3}, {"su4", 4}, {"so5", 4}}) {
    auto g = build_algebra(sel);
    auto f = structure_constants(g);
    auto h = sym_trace_tensor(g, m);
    EXPECT_LT(check_invariance(cocycle_from_sym(f, h), f), 1e-12) << sel;
    EXPECT_LT(check_pullback_vanishes(f, h), 1e-12) << sel;
  }
}

TEST(Cocycle, RejectsNonInvariantInput) {
  auto g = build_algebra("su3");
  auto f = structure_constants(g);
  auto bad = SymTensor::from_entries(3, 8, {{{0, 0, 0}, 1.0}});
  EXPECT_THROW(cocycle_from_sym(f, bad), InvalidInput);
  EXPECT_THROW(cocycle_from_sym(f, SymTensor(1, 8)), InvalidInput);
}

TEST(Cocycle, FiveCocycleIsTheTracePullback) {
  auto g = build_algebra("su4");
  auto f = structure_constants(g);
  auto p = proportionality(omega5(f, d_tensor(g)), cocycle_from_sym(f, sym_trace_tensor(g, 3)));
  EXPECT_NEAR(p.scale, 4.0, 1e-12);
  EXPECT_LT(p.residual, 1e-12);
}

TEST(Cocycle, SevenCocycleFromDIsTheTracePullback) {
  auto g = build_algebra("su4");
  auto f = structure_constants(g);
  auto o7 = omega7_su(f, d_tensor(g));
  auto p = proportionality(o7, cocycle_from_sym(f, sym_trace_tensor(g, 4)));
  EXPECT_NEAR(p.scale, 8.0, 1e-10);
  EXPECT_LT(p.residual, 1e-11);
  EXPECT_EQ(o7.nnz(), 349u);
  EXPECT_EQ(omega7_su(structure_constants(build_algebra("su3")), d_tensor(build_algebra("su3"))).max_abs() < 1e-12,
            true);
}

TEST(Recurrence, SuStepsReproduceFdCocycles) {
  auto g = build_algebra("su4");
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  auto o5 = omega5(f, d);
  auto o7 = omega7_su(f, d);
  auto p5 = proportionality(recurrence_su(f, f, d), o5);
  EXPECT_NEAR(p5.scale, 1.0, 1e-12);
  EXPECT_LT(p5.residual, 1e-12);
  auto p7 = proportionality(recurrence_su(o5, f, d), o7);
  EXPECT_NEAR(p7.scale, 1.0, 1e-12);
  EXPECT_LT(p7.residual, 1e-12);
}

TEST(Recurrence, BcdStepReproducesTower) {
  auto g = build_algebra("so5");
  auto f = structure_constants(g);
  auto v = v_tensor(g).v;
  auto p = proportionality(recurrence_bcd(f, f, v), cocycle_from_sym(f, sym_trace_tensor(g, 4)));
  EXPECT_NEAR(p.scale, -3.0, 1e-12);
  EXPECT_LT(p.residual, 1e-12);
}

TEST(GoldenTables, Su3FiveCocycle) {
  auto t = golden::parse_table(reference_text(), "table2", R"(\\Omega)");
  ASSERT_EQ(t.size(), 9u);
  auto g = build_algebra("su3");
  auto o5 = omega5(structure_constants(g), d_tensor(g));
  EXPECT_EQ(o5.nnz(), t.size());
  expect_table(o5, t);
}

TEST(GoldenTables, Su4FiveCocycle) {
  auto t = golden::parse_table(reference_text(), "table6", R"(\\Omega)");
  ASSERT_EQ(t.size(), 179u);
  auto g = build_algebra("su4");
  auto o5 = omega5(structure_constants(g), d_tensor(g));
  expect_table(o5, t);
  EXPECT_GE(o5.nnz(), t.size());
}
