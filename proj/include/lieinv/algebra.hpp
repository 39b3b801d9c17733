#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "config.hpp"
#include "sparse_tensor.hpp"

namespace lieinv {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

enum class Family { A, B, C, D };
enum class Convention { hermitian, antihermitian };

struct AlgebraSpec {
  Family family = Family::A;
  int rank = 1;
  int adjoint_dim = 3;
  int defining_dim = 2;
  std::string label;

  static AlgebraSpec make(Family fam, int l) {
    AlgebraSpec s;
    s.family = fam;
    s.rank = l;
    switch (fam) {
      case Family::A:
        if (l < 1) throw UnsupportedRank("A_l needs l >= 1 (su(1) is trivial)");
        s.defining_dim = l + 1;
        s.adjoint_dim = (l + 1) * (l + 1) - 1;
        s.label = "su(" + std::to_string(l + 1) + ")";
        break;
      case Family::B:
        if (l < 2) throw UnsupportedRank("B_l needs l >= 2");
        s.defining_dim = 2 * l + 1;
        s.adjoint_dim = l * (2 * l + 1);
        s.label = "so(" + std::to_string(2 * l + 1) + ")";
        break;
      case Family::C:
        if (l < 3) throw UnsupportedRank("C_l needs l >= 3");
        s.defining_dim = 2 * l;
        s.adjoint_dim = l * (2 * l + 1);
        s.label = "sp(" + std::to_string(l) + ")";
        break;
      case Family::D:
        if (l < 4) throw UnsupportedRank("D_l needs l >= 4");
        s.defining_dim = 2 * l;
        s.adjoint_dim = l * (2 * l - 1);
        s.label = "so(" + std::to_string(2 * l) + ")";
        break;
    }
    return s;
  }

  static AlgebraSpec su(int n) { return make(Family::A, n - 1); }

  // Accepts su3, so5, sp3, so8 (also "su(3)") or Cartan labels A2, B2, C3, D4.
  static AlgebraSpec parse(std::string sel) {
    std::string s;
    for (char c : sel)
      if (c != '(' && c != ')' && c != ' ') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto number = [&](std::size_t from) {
      if (from >= s.size()) throw InvalidInput("missing rank in algebra selector '" + sel + "'");
      for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
          throw InvalidInput("bad algebra selector '" + sel + "'");
      return std::stoi(s.substr(from));
    };
    if (s.rfind("su", 0) == 0) {
      int n = number(2);
      if (n < 2) throw UnsupportedRank("su(n) needs n >= 2");
      return make(Family::A, n - 1);
    }
    if (s.rfind("so", 0) == 0) {
      int n = number(2);
      return n % 2 ? make(Family::B, (n - 1) / 2) : make(Family::D, n / 2);
    }
    if (s.rfind("sp", 0) == 0) return make(Family::C, number(2));
    if (s.size() >= 2) {
      switch (s[0]) {
        case 'a': return make(Family::A, number(1));
        case 'b': return make(Family::B, number(1));
        case 'c': return make(Family::C, number(1));
        case 'd': return make(Family::D, number(1));
        default: break;
      }
    }
    throw UnsupportedFamily("unknown algebra selector '" + sel + "'");
  }
};

struct GeneratorSet {
  AlgebraSpec spec;
  std::vector<CMatrix> matrices;
  double kappa = 0.5;
  Convention convention = Convention::hermitian;

  int dim() const { return static_cast<int>(matrices.size()); }
  int n() const { return spec.defining_dim; }
};

namespace detail {

inline CMatrix unit(int n, int a, int b) {
  CMatrix m = CMatrix::Zero(n, n);
  m(a, b) = 1.0;
  return m;
}

// Generalized Gell-Mann order: for k = 2..n, the pairs (j,k), j<k, each as
// symmetric then antisymmetric matrix, followed by the k-th diagonal matrix.
inline std::vector<CMatrix> gell_mann_halves(int n) {
  std::vector<CMatrix> out;
  const cplx I(0, 1);
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      CMatrix s = CMatrix::Zero(n, n), a = CMatrix::Zero(n, n);
      s(j, k) = s(k, j) = 1.0;
      a(j, k) = -I;
      a(k, j) = I;
      out.push_back(s / 2.0);
      out.push_back(a / 2.0);
    }
    CMatrix d = CMatrix::Zero(n, n);
    double c = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int j = 0; j < k; ++j) d(j, j) = c;
    d(k, k) = -c * k;
    out.push_back(d / 2.0);
  }
  return out;
}

inline std::vector<CMatrix> orthogonal_basis(int n) {
  std::vector<CMatrix> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.push_back(unit(n, a, b) - unit(n, b, a));
  return out;
}

// Compact sp(l) as antihermitian [[A, B], [-conj(B), conj(A)]] with
// A antihermitian and B symmetric; every element has Tr(X X) = -2.
inline std::vector<CMatrix> symplectic_basis(int l) {
  const int n = 2 * l;
  const cplx I(0, 1);
  const double s2 = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> out;
  auto block = [&](const CMatrix& A, const CMatrix& B) {
    CMatrix x = CMatrix::Zero(n, n);
    x.topLeftCorner(l, l) = A;
    x.topRightCorner(l, l) = B;
    x.bottomLeftCorner(l, l) = -B.conjugate();
    x.bottomRightCorner(l, l) = A.conjugate();
    out.push_back(x);
  };
  CMatrix Z = CMatrix::Zero(l, l);
  for (int a = 0; a < l; ++a)
    for (int b = a + 1; b < l; ++b) {
      CMatrix E = unit(l, a, b) - unit(l, b, a);
      CMatrix S = unit(l, a, b) + unit(l, b, a);
      block(E * s2, Z);
      block(I * S * s2, Z);
    }
  for (int a = 0; a < l; ++a) block(I * unit(l, a, a), Z);
  for (int a = 0; a < l; ++a)
    for (int b = a + 1; b < l; ++b) {
      CMatrix S = unit(l, a, b) + unit(l, b, a);
      block(Z, S * s2);
      block(Z, I * S * s2);
    }
  for (int a = 0; a < l; ++a) {
    block(Z, unit(l, a, a));
    block(Z, I * unit(l, a, a));
  }
  return out;
}

inline CMatrix symplectic_form(int l) {
  CMatrix eta = CMatrix::Zero(2 * l, 2 * l);
  eta.topRightCorner(l, l) = CMatrix::Identity(l, l);
  eta.bottomLeftCorner(l, l) = -CMatrix::Identity(l, l);
  return eta;
}

inline cplx trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace detail

// eta of the condition X eta = -eta X^T (identity for B/D, symplectic form for C).
inline CMatrix invariant_form(const AlgebraSpec& spec) {
  if (spec.family == Family::C) return detail::symplectic_form(spec.rank);
  return CMatrix::Identity(spec.defining_dim, spec.defining_dim);
}

inline GeneratorSet build_algebra(const AlgebraSpec& spec) {
  GeneratorSet g;
  g.spec = AlgebraSpec::make(spec.family, spec.rank);
  switch (spec.family) {
    case Family::A:
      g.matrices = detail::gell_mann_halves(g.spec.defining_dim);
      g.kappa = 0.5;
      g.convention = Convention::hermitian;
      break;
    case Family::B:
    case Family::D:
      g.matrices = detail::orthogonal_basis(g.spec.defining_dim);
      g.kappa = -2.0;
      g.convention = Convention::antihermitian;
      break;
    case Family::C:
      g.matrices = detail::symplectic_basis(g.spec.rank);
      g.kappa = -2.0;
      g.convention = Convention::antihermitian;
      break;
  }
  return g;
}

inline GeneratorSet build_algebra(const std::string& selector) {
  return build_algebra(AlgebraSpec::parse(selector));
}

// Max deviation from the GeneratorSet invariants: tracelessness, trace metric,
// hermiticity (A) or the eta condition (B/C/D).
inline double generator_residual(const GeneratorSet& g) {
  double res = 0;
  const int r = g.dim();
  CMatrix eta = invariant_form(g.spec);
  for (int i = 0; i < r; ++i) {
    const CMatrix& x = g.matrices[i];
    res = std::max(res, std::abs(x.trace()));
    if (g.convention == Convention::hermitian)
      res = std::max(res, (x - x.adjoint()).cwiseAbs().maxCoeff());
    else
      res = std::max(res, (x * eta + eta * x.transpose()).cwiseAbs().maxCoeff());
    for (int j = 0; j < r; ++j) {
      cplx t = detail::trace_product(x, g.matrices[j]);
      res = std::max(res, std::abs(t - (i == j ? g.kappa : 0.0)));
    }
  }
  return res;
}

inline AltTensor structure_constants(const GeneratorSet& g, double tol = default_tolerance) {
  const int r = g.dim();
  std::vector<double> full(static_cast<std::size_t>(r) * r * r, 0.0);
  const cplx scale = g.convention == Convention::hermitian ? 1.0 / (cplx(0, 1) * g.kappa) : cplx(1.0 / g.kappa);
  double imag = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      CMatrix c = g.matrices[i] * g.matrices[j] - g.matrices[j] * g.matrices[i];
      for (int k = 0; k < r; ++k) {
        cplx v = scale * detail::trace_product(c, g.matrices[k]);
        imag = std::max(imag, std::abs(v.imag()));
        full[(static_cast<std::size_t>(i) * r + j) * r + k] = v.real();
        full[(static_cast<std::size_t>(j) * r + i) * r + k] = -v.real();
      }
    }
  if (imag > tol) throw ConventionViolation("structure constants not real: " + std::to_string(imag));
  double asym = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        asym = std::max(asym, std::abs(full[(static_cast<std::size_t>(i) * r + j) * r + k] +
                                       full[(static_cast<std::size_t>(i) * r + k) * r + j]));
  if (asym > tol) throw ConventionViolation("structure constants not antisymmetric: " + std::to_string(asym));
  AltTensor f(3, r);
  Index a = first_increasing(3);
  std::vector<std::pair<std::uint64_t, double>> e;
  do {
    e.emplace_back(rank_increasing(a), full[(static_cast<std::size_t>(a[0]) * r + a[1]) * r + a[2]]);
  } while (next_increasing(a, r));
  std::sort(e.begin(), e.end());
  for (auto& [rk, v] : e) f.push(rk, v);
  return f;
}

inline SymTensor d_tensor(const GeneratorSet& g, double tol = default_tolerance) {
  if (g.spec.family != Family::A) throw UnsupportedFamily("d tensor is defined for su(n) only");
  const int r = g.dim();
  std::vector<double> full(static_cast<std::size_t>(r) * r * r, 0.0);
  double imag = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      CMatrix ac = g.matrices[i] * g.matrices[j] + g.matrices[j] * g.matrices[i];
      for (int k = 0; k < r; ++k) {
        cplx v = detail::trace_product(ac, g.matrices[k]) / g.kappa;
        imag = std::max(imag, std::abs(v.imag()));
        full[(static_cast<std::size_t>(i) * r + j) * r + k] = v.real();
        full[(static_cast<std::size_t>(j) * r + i) * r + k] = v.real();
      }
    }
  if (imag > tol) throw ConventionViolation("d tensor not real: " + std::to_string(imag));
  double asym = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        asym = std::max(asym, std::abs(full[(static_cast<std::size_t>(i) * r + j) * r + k] -
                                       full[(static_cast<std::size_t>(i) * r + k) * r + j]));
  if (asym > tol) throw ConventionViolation("d tensor not symmetric: " + std::to_string(asym));
  SymTensor d(3, r);
  Index a(3, 0);
  std::vector<std::pair<std::uint64_t, double>> e;
  do {
    e.emplace_back(rank_multiset(a), full[(static_cast<std::size_t>(a[0]) * r + a[1]) * r + a[2]]);
  } while (next_multiset(a, r));
  std::sort(e.begin(), e.end());
  for (auto& [rk, v] : e) d.push(rk, v);
  return d;
}

// (F_a)_{bc} = f_{bac}
inline std::vector<RMatrix> adjoint_F(const AltTensor& f) {
  if (f.order() != 3) throw InvalidInput("adjoint_F needs an order-3 tensor");
  const int r = f.dim();
  std::vector<RMatrix> F(r, RMatrix::Zero(r, r));
  f.for_each([&](const Index& k, double v) {
    const int p[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const int s[6] = {1, -1, -1, 1, 1, -1};
    for (int t = 0; t < 6; ++t) {
      int b = k[p[t][0]], a = k[p[t][1]], c = k[p[t][2]];
      F[a](b, c) = s[t] * v;
    }
  });
  return F;
}

// (D_a)_{bc} = d_{abc}
inline std::vector<RMatrix> adjoint_D(const SymTensor& d) {
  if (d.order() != 3) throw InvalidInput("adjoint_D needs an order-3 tensor");
  const int r = d.dim();
  std::vector<RMatrix> D(r, RMatrix::Zero(r, r));
  d.for_each([&](const Index& k, double v) {
    int p[3] = {k[0], k[1], k[2]};
    std::sort(p, p + 3);
    do D[p[0]](p[1], p[2]) = v;
    while (std::next_permutation(p, p + 3));
  });
  return D;
}

// Matrices with [X_a, X_b] = f_abc X_c.
inline std::vector<CMatrix> lie_rep(const GeneratorSet& g) {
  std::vector<CMatrix> x;
  for (auto& m : g.matrices) x.push_back(g.convention == Convention::hermitian ? CMatrix(cplx(0, -1) * m) : m);
  return x;
}

inline std::vector<CMatrix> complexify(const std::vector<RMatrix>& m) {
  std::vector<CMatrix> out;
  for (auto& a : m) out.push_back(a.cast<cplx>());
  return out;
}

// Max deviation of [X_a, X_b] - f_abc X_c over all a, b.
inline double commutation_residual(const std::vector<CMatrix>& x, const AltTensor& f) {
  const int r = f.dim();
  double res = 0;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      CMatrix c = x[a] * x[b] - x[b] * x[a];
      for (int k = 0; k < r; ++k) {
        double v = f({a, b, k});
        if (v != 0.0) c -= v * x[k];
      }
      res = std::max(res, c.cwiseAbs().maxCoeff());
    }
  return res;
}

// Sparse structure constants C_{ab}^l = f_{abl}, per ordered pair (a,b).
struct PairTable {
  int r = 0;
  std::vector<std::vector<std::pair<int, double>>> lists;

  explicit PairTable(const AltTensor& f) : r(f.dim()), lists(static_cast<std::size_t>(f.dim()) * f.dim()) {
    f.for_each([&](const Index& k, double v) {
      const int p[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      const int s[6] = {1, -1, -1, 1, 1, -1};
      for (int t = 0; t < 6; ++t) lists[k[p[t][0]] * r + k[p[t][1]]].emplace_back(k[p[t][2]], s[t] * v);
    });
    for (auto& l : lists) std::sort(l.begin(), l.end());
  }
  const std::vector<std::pair<int, double>>& operator()(int a, int b) const { return lists[a * r + b]; }
};

}  // namespace lieinv
