#pragma once

// Brute-force reference computations. They use only the generator matrices,
// std::next_permutation and dense Eigen algebra, never the library's
// enumeration shortcuts.

#include <algorithm>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include <lieinv/algebra.hpp>
#include <lieinv/sparse_tensor.hpp>

namespace oracle {

using lieinv::cplx;
using lieinv::CMatrix;
using lieinv::Index;

inline int perm_sign(std::vector<int> p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
      else if (p[i] == p[j]) return 0;
  return s;
}

// Calls fn(perm) for every permutation of 0..m-1.
inline void for_each_perm(int m, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do fn(p);
  while (std::next_permutation(p.begin(), p.end()));
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Coordinates of x in the basis `basis` by least squares on vectorized matrices.
inline Eigen::VectorXcd coordinates(const std::vector<CMatrix>& basis, const CMatrix& x) {
  const auto n2 = basis[0].size();
  Eigen::MatrixXcd B(n2, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) B.col(i) = Eigen::Map<const Eigen::VectorXcd>(basis[i].data(), n2);
  Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(x.data(), n2);
  return B.colPivHouseholderQr().solve(y);
}

// [X_a, X_b] = f_abc X_c with X the Lie-algebra (antihermitian) matrices.
inline std::vector<double> dense_f(const std::vector<CMatrix>& X) {
  const int r = static_cast<int>(X.size());
  std::vector<double> f(r * r * r, 0.0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      auto c = coordinates(X, X[a] * X[b] - X[b] * X[a]);
      for (int k = 0; k < r; ++k) f[(a * r + b) * r + k] = c(k).real();
    }
  return f;
}

// (1/m!) sum over all m! orderings of Tr(X_{I_p1} ... X_{I_pm})
inline cplx sym_trace(const std::vector<CMatrix>& X, const Index& I) {
  const int m = static_cast<int>(I.size());
  cplx s = 0;
  for_each_perm(m, [&](const std::vector<int>& p) {
    CMatrix prod = X[I[p[0]]];
    for (int k = 1; k < m; ++k) prod = prod * X[I[p[k]]];
    s += prod.trace();
  });
  return s / factorial(m);
}

// (1/q!) sum_perm sign(perm) fn(I_perm)
inline double antisymmetrize(const Index& I, const std::function<double(const Index&)>& fn) {
  const int q = static_cast<int>(I.size());
  double s = 0;
  Index J(q);
  for_each_perm(q, [&](const std::vector<int>& p) {
    for (int k = 0; k < q; ++k) J[k] = I[p[k]];
    s += perm_sign(p) * fn(J);
  });
  return s / factorial(q);
}

// (1/m!) sum_perm fn(I_perm)
inline double symmetrize(const Index& I, const std::function<double(const Index&)>& fn) {
  const int m = static_cast<int>(I.size());
  double s = 0;
  Index J(m);
  for_each_perm(m, [&](const std::vector<int>& p) {
    for (int k = 0; k < m; ++k) J[k] = I[p[k]];
    s += fn(J);
  });
  return s / factorial(m);
}

// Pfaffian from its permutation definition: 1/(2^n n!) sum sign prod a_{s(2i) s(2i+1)}
inline double pfaffian(const Eigen::MatrixXd& a) {
  const int N = static_cast<int>(a.rows());
  if (N % 2) return 0.0;
  double s = 0;
  for_each_perm(N, [&](const std::vector<int>& p) {
    double prod = perm_sign(p);
    for (int i = 0; i < N; i += 2) prod *= a(p[i], p[i + 1]);
    s += prod;
  });
  return s / (std::pow(2.0, N / 2) * factorial(N / 2));
}

// Elementary symmetric polynomial e_k of the eigenvalues.
inline cplx elementary_symmetric(const CMatrix& M, int k) {
  Eigen::ComplexEigenSolver<CMatrix> es(M);
  const auto& ev = es.eigenvalues();
  std::vector<cplx> e(k + 1, 0.0);
  e[0] = 1;
  for (int i = 0; i < ev.size(); ++i)
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * ev(i);
  return e[k];
}

// Every ordered tuple of length m over 0..r-1.
inline void for_each_tuple(int m, int r, const std::function<void(const Index&)>& fn) {
  Index I(m, 0);
  while (true) {
    fn(I);
    int k = m - 1;
    while (k >= 0 && ++I[k] == r) I[k--] = 0;
    if (k < 0) return;
  }
}

}  // namespace oracle
