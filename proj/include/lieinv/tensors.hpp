#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "algebra.hpp"
#include "symmetrize.hpp"

namespace lieinv {

// Symmetric trace Tr(X_(i1 ... X_im)) of a list of matrices, evaluated by
// splitting each index multiset I = A + B with |A| = ceil(m/2):
//   sum_perm Tr(X_perm) = sum_A ways(A) Tr(Q(A) Q(B)),
// where Q(A) sums the products over all orderings of A (memoized by rank).
template <class Matrix>
class SymTraceEvaluator {
 public:
  using Scalar = typename Matrix::Scalar;

  SymTraceEvaluator(const std::vector<Matrix>& x, int m) : x_(x), m_(m), r_(static_cast<int>(x.size())) {
    if (m < 1) throw InvalidInput("symmetric trace order must be positive");
    half_ = (m + 1) / 2;
    const int n = r_ ? static_cast<int>(x[0].rows()) : 0;
    q_.resize(half_ + 1);
    q_[0].push_back(Matrix::Identity(n, n));
    for (int s = 1; s <= half_; ++s) {
      require_budget(count_multisets(r_, s), "symmetric trace memo");
      q_[s].resize(count_multisets(r_, s));
      Index a(s, 0), sub(s - 1);
      do {
        Matrix acc = Matrix::Zero(n, n);
        for (int p = 0; p < s; ++p) {
          if (p > 0 && a[p] == a[p - 1]) continue;
          int c = 0;
          for (int u = 0; u < s; ++u) c += a[u] == a[p];
          int o = 0;
          for (int u = 0; u < s; ++u)
            if (u != p) sub[o++] = a[u];
          acc += static_cast<double>(c) * (x_[a[p]] * q_[s - 1][rank_multiset(sub)]);
        }
        q_[s][rank_multiset(a)] = std::move(acc);
      } while (next_multiset(a, r_));
    }
  }

  // Unit-weight symmetric trace at a canonical tuple.
  Scalar value(std::span<const int> I) const {
    std::vector<int> vals, cnt;
    for (int v : I) {
      if (!vals.empty() && vals.back() == v)
        ++cnt.back();
      else {
        vals.push_back(v);
        cnt.push_back(1);
      }
    }
    Index A, B;
    Scalar total = 0;
    auto rec = [&](auto&& self, std::size_t v, int left, double w) -> void {
      if (v == vals.size()) {
        if (left != 0) return;
        const Matrix& qa = q_[A.size()][rank_multiset(A)];
        const Matrix& qb = q_[B.size()][rank_multiset(B)];
        total += w * (qa.array() * qb.transpose().array()).sum();
        return;
      }
      for (int a = std::min(cnt[v], left); a >= 0; --a) {
        for (int t = 0; t < a; ++t) A.push_back(vals[v]);
        for (int t = a; t < cnt[v]; ++t) B.push_back(vals[v]);
        self(self, v + 1, left - a, w * static_cast<double>(binomial(cnt[v], a)));
        A.resize(A.size() - a);
        B.resize(B.size() - (cnt[v] - a));
      }
    };
    rec(rec, 0, half_, 1.0);
    return total / static_cast<double>(factorial(m_));
  }

 private:
  const std::vector<Matrix>& x_;
  int m_, r_, half_;
  std::vector<std::vector<Matrix>> q_;
};

namespace detail {

inline double real_part(double v) { return v; }
inline double real_part(std::complex<double> v) { return v.real(); }
inline double imag_part(double) { return 0.0; }
inline double imag_part(std::complex<double> v) { return v.imag(); }

}  // namespace detail

template <class Matrix>
SymTensor sym_trace_tensor(const std::vector<Matrix>& x, int m, double tol = default_tolerance) {
  if (m < 2 || m > 8) throw BudgetExceeded("symmetric trace order must lie in [2, 8]");
  const int r = static_cast<int>(x.size());
  require_budget(SymTensor::capacity(m, r), "symmetric trace tensor");
  SymTraceEvaluator<Matrix> ev(x, m);
  double imag = 0;
  SymTensor t = tabulate_symmetric(m, r, [&](const Index& I) {
    auto v = ev.value(I);
    imag = std::max(imag, std::abs(detail::imag_part(v)));
    return detail::real_part(v);
  });
  if (imag > tol) throw ConventionViolation("symmetric trace has an imaginary part " + std::to_string(imag));
  return t;
}

inline SymTensor sym_trace_tensor(const GeneratorSet& g, int m, double tol = default_tolerance) {
  return sym_trace_tensor(g.matrices, m, tol);
}

// Max over (nu, canonical I) of sum_s C_{nu I_s}^rho h_{I with I_s -> rho}.
inline double invariance_residual(const SymTensor& h, const PairTable& c) {
  const int r = h.dim(), m = h.order();
  double res = 0;
  std::unordered_map<std::uint64_t, double> acc;
  Index J(m), I(m);
  for (int nu = 0; nu < r; ++nu) {
    acc.clear();
    for (std::size_t e = 0; e < h.nnz(); ++e) {
      h.unrank(h.rank_at(e), J.data());
      double w = h.value_at(e);
      for (int s = 0; s < m; ++s) {
        if (s > 0 && J[s] == J[s - 1]) continue;
        int rho = J[s];
        // C_{nu i}^rho = f_{nu i rho} = -f_{nu rho i}
        for (auto [i, fv] : c(nu, rho)) {
          I = J;
          I[s] = i;
          std::sort(I.begin(), I.end());
          int count = static_cast<int>(std::count(I.begin(), I.end(), i));
          acc[rank_multiset(I)] += -fv * w * count;
        }
      }
    }
    for (auto& [k, v] : acc) res = std::max(res, std::abs(v));
  }
  return res;
}

inline double invariance_residual(const SymTensor& h, const AltTensor& f) { return invariance_residual(h, PairTable(f)); }

// Sparse rows of an order-3 symmetric tensor: for each ordered pair (a,b),
// the list of (x, d_abx).
struct TripleRows {
  int r = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;
  explicit TripleRows(const SymTensor& d) : r(d.dim()), rows(static_cast<std::size_t>(d.dim()) * d.dim()) {
    d.for_each([&](const Index& k, double v) {
      int p[3] = {k[0], k[1], k[2]};
      do rows[p[0] * r + p[1]].emplace_back(p[2], v);
      while (std::next_permutation(p, p + 3));
    });
    for (auto& row : rows) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }
  const std::vector<std::pair<int, double>>& operator()(int a, int b) const { return rows[a * r + b]; }
};

// Unsymmetrized chain d_{i1 i2 l1} d_{l1 i3 l2} ... d_{l(m-3) i(m-1) i(m)}.
inline double d_chain(const TripleRows& rows, std::span<const int> seq) {
  const int m = static_cast<int>(seq.size());
  if (m == 3) {
    for (auto [x, v] : rows(seq[0], seq[1]))
      if (x == seq[2]) return v;
    return 0.0;
  }
  std::vector<std::pair<int, double>> cur(rows(seq[0], seq[1]).begin(), rows(seq[0], seq[1]).end());
  std::vector<double> scratch(rows.r, 0.0);
  std::vector<char> seen(rows.r, 0);
  std::vector<int> touched;
  for (int p = 2; p < m - 2; ++p) {
    touched.clear();
    for (auto [x, w] : cur)
      for (auto [y, v] : rows(x, seq[p])) {
        if (!seen[y]) {
          seen[y] = 1;
          touched.push_back(y);
        }
        scratch[y] += w * v;
      }
    cur.clear();
    std::sort(touched.begin(), touched.end());
    for (int y : touched) {
      cur.emplace_back(y, scratch[y]);
      scratch[y] = 0.0;
      seen[y] = 0;
    }
  }
  double total = 0;
  for (auto [x, w] : cur)
    for (auto [y, v] : rows(seq[m - 2], seq[m - 1]))
      if (y == x) total += w * v;
  return total;
}

// d^(m)_(i1...im): symmetrized chain of d tensors.
inline double d_family_at(const TripleRows& rows, std::span<const int> I) {
  const int m = static_cast<int>(I.size());
  std::vector<int> sizes;
  sizes.push_back(2);
  for (int p = 2; p < m - 2; ++p) sizes.push_back(1);
  sizes.push_back(2);
  if (m == 3) sizes = {3};
  return symmetrize_blocks(I, sizes, [&](const std::vector<Index>& b) {
    Index seq;
    for (auto& x : b) seq.insert(seq.end(), x.begin(), x.end());
    return d_chain(rows, seq);
  });
}

inline SymTensor d_family(const SymTensor& d3, int m) {
  if (d3.order() != 3) throw InvalidInput("d_family needs the order-3 d tensor");
  if (m < 3 || m > 6) throw InvalidInput("d_family order must lie in [3, 6]");
  if (m == 3) return d3;
  TripleRows rows(d3);
  return tabulate_symmetric(m, d3.dim(), [&](const Index& I) { return d_family_at(rows, I); });
}

// Unsymmetrized d4_{abcd} = d_{abx} d_{xcd} as a dense r^4 lookup helper.
inline double d4_chain(const TripleRows& rows, int a, int b, int c, int d) {
  double s = 0;
  for (auto [x, v] : rows(a, b))
    for (auto [y, w] : rows(c, d))
      if (x == y) s += v * w;
  return s;
}

struct VTensorResult {
  SymTensor v;
  double closure_residual = 0;
  double symmetry_residual = 0;
};

// {X_i,X_j,X_k} = v_{ijk}^s X_s, projected with the trace metric.
inline VTensorResult v_tensor(const GeneratorSet& g, double tol = default_tolerance) {
  if (g.spec.family == Family::A) throw UnsupportedFamily("v tensor is defined for B, C, D only");
  const int r = g.dim();
  const auto& X = g.matrices;
  PartialSym part(4, r);
  double closure = 0, imag = 0;
  Index a(3, 0);
  do {
    const CMatrix &x = X[a[0]], &y = X[a[1]], &z = X[a[2]];
    CMatrix s = x * y * z + x * z * y + y * x * z + y * z * x + z * x * y + z * y * x;
    CMatrix rest = s;
    for (int k = 0; k < r; ++k) {
      cplx v = detail::trace_product(s, X[k]) / g.kappa;
      imag = std::max(imag, std::abs(v.imag()));
      if (std::abs(v.real()) > drop_tolerance) {
        part.add(a, k, v.real());
        rest -= v.real() * X[k];
      }
    }
    closure = std::max(closure, rest.cwiseAbs().maxCoeff());
  } while (next_multiset(a, r));
  if (imag > tol) throw ConventionViolation("v tensor not real");
  if (closure > tol) throw ClosureError("symmetrized triple product leaves the algebra: " + std::to_string(closure));
  auto res = part.finish();
  return {res.tensor, closure, res.symmetry_residual};
}

// Chained v contractions with outer symmetrization:
//   order 6: v_(i1i2i3 a v_a i4i5i6), order 8: v_(i1i2i3 a v_a i4i5 b v_b i6i7i8).
inline SymTensor v_family(const SymTensor& v4, int order) {
  if (v4.order() != 4) throw InvalidInput("v_family needs the order-4 v tensor");
  if (order != 4 && order != 6 && order != 8) throw InvalidInput("v_family order must be 4, 6 or 8");
  if (order == 4) return v4;
  const int r = v4.dim();
  std::vector<std::vector<std::pair<int, double>>> rows(count_multisets(r, 3));
  v4.for_each([&](const Index& k, double v) {
    for (int s = 0; s < 4; ++s) {
      if (s > 0 && k[s] == k[s - 1]) continue;
      Index t;
      for (int u = 0; u < 4; ++u)
        if (u != s) t.push_back(k[u]);
      rows[rank_multiset(t)].emplace_back(k[s], v);
    }
  });
  auto row = [&](int a, int b, int c) -> const std::vector<std::pair<int, double>>& {
    int t[3] = {a, b, c};
    std::sort(t, t + 3);
    return rows[rank_multiset(t)];
  };
  std::vector<double> dense(r, 0.0);
  if (order == 6) {
    std::vector<int> sizes = {3, 3};
    return tabulate_symmetric(6, r, [&](const Index& I) {
      return symmetrize_blocks(I, sizes, [&](const std::vector<Index>& b) {
        const auto& l1 = rows[rank_multiset(b[0])];
        const auto& l2 = rows[rank_multiset(b[1])];
        double s = 0;
        std::size_t p = 0, q = 0;
        while (p < l1.size() && q < l2.size()) {
          if (l1[p].first < l2[q].first)
            ++p;
          else if (l2[q].first < l1[p].first)
            ++q;
          else
            s += l1[p++].second * l2[q++].second;
        }
        return s;
      });
    });
  }
  std::vector<int> sizes = {3, 2, 3};
  return tabulate_symmetric(8, r, [&](const Index& I) {
    return symmetrize_blocks(I, sizes, [&](const std::vector<Index>& b) {
      const auto& l3 = rows[rank_multiset(b[2])];
      for (auto [x, v] : l3) dense[x] = v;
      double s = 0;
      for (auto [a1, v1] : rows[rank_multiset(b[0])])
        for (auto [a2, v2] : row(a1, b[1][0], b[1][1])) s += v1 * v2 * dense[a2];
      for (auto [x, v] : l3) dense[x] = 0.0;
      return s;
    });
  });
}

// Pfaffian of a real antisymmetric matrix by skew Gaussian elimination.
inline double pfaffian(RMatrix a) {
  const int n = static_cast<int>(a.rows());
  if (n % 2) return 0.0;
  double pf = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    int kp = k + 1;
    for (int j = k + 2; j < n; ++j)
      if (std::abs(a(j, k)) > std::abs(a(kp, k))) kp = j;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      Eigen::VectorXd tau = a.row(k).tail(n - k - 2).transpose() / a(k, k + 1);
      Eigen::VectorXd col = a.col(k + 1).tail(n - k - 2);
      a.bottomRightCorner(n - k - 2, n - k - 2) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

// Pf(lambda^i X_i) = Pf_{i1...il} lambda^i1 ... lambda^il, expanded over
// perfect matchings after writing each X_i in the E_ab - E_ba basis.
inline SymTensor pfaffian_tensor(const GeneratorSet& g) {
  if (g.spec.family != Family::D) throw UnsupportedFamily("Pfaffian tensor is defined for D_l only");
  const int n = g.n(), l = n / 2, r = g.dim();
  if (n % 2) throw InvalidInput("odd defining dimension");
  if (l > 5) throw BudgetExceeded("Pfaffian tensor supported for l <= 5");
  // coefficient lists per pair (a<b): (i, c) with (X_i)_{ab} = c
  std::vector<std::vector<std::pair<int, double>>> coef(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        double v = g.matrices[i](a, b).real();
        if (std::abs(v) > drop_tolerance) coef[a * n + b].emplace_back(i, v);
      }
  std::unordered_map<std::uint64_t, double> acc;
  std::vector<bool> used(n, false);
  std::vector<std::pair<int, int>> pairs;
  Index mono;
  auto expand = [&](auto&& self, std::size_t p, double w) -> void {
    if (p == pairs.size()) {
      Index s = mono;
      std::sort(s.begin(), s.end());
      acc[rank_multiset(s)] += w / static_cast<double>(multiplicity(s));
      return;
    }
    for (auto [i, c] : coef[pairs[p].first * n + pairs[p].second]) {
      mono.push_back(i);
      self(self, p + 1, w * c);
      mono.pop_back();
    }
  };
  auto match = [&](auto&& self, int sign) -> void {
    int a = 0;
    while (a < n && used[a]) ++a;
    if (a == n) {
      expand(expand, 0, sign);
      return;
    }
    used[a] = true;
    int between = 0;
    for (int b = a + 1; b < n; ++b) {
      if (used[b]) continue;
      used[b] = true;
      pairs.emplace_back(a, b);
      self(self, (between % 2) ? -sign : sign);
      pairs.pop_back();
      used[b] = false;
      ++between;
    }
    used[a] = false;
  };
  match(match, 1);
  return SymTensor::from_map(l, r, acc);
}

// Full contraction T_{i1...im} lambda^i1 ... lambda^im.
inline double contract_vector(const SymTensor& t, const std::vector<double>& lambda) {
  double s = 0;
  t.for_each([&](const Index& k, double v) {
    double p = static_cast<double>(multiplicity(k)) * v;
    for (int i : k) p *= lambda[i];
    s += p;
  });
  return s;
}

struct VmBasis {
  int order = 0;
  std::vector<std::pair<std::string, SymTensor>> elements;
};

// All unit-weight symmetrized products of the primitives with total order m.
inline VmBasis basis_Vm(const std::vector<std::pair<std::string, SymTensor>>& primitives, int m) {
  VmBasis basis;
  basis.order = m;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      std::string label;
      std::vector<const SymTensor*> fs;
      for (std::size_t p : pick) {
        label += (label.empty() ? "" : "*") + primitives[p].first;
        fs.push_back(&primitives[p].second);
      }
      basis.elements.emplace_back(label, fs.size() == 1 ? *fs[0] : sym_product(fs));
      return;
    }
    for (std::size_t p = from; p < primitives.size(); ++p) {
      int o = primitives[p].second.order();
      if (o > left || o < 2) continue;
      pick.push_back(p);
      self(self, p, left - o);
      pick.pop_back();
    }
  };
  rec(rec, 0, m);
  return basis;
}

struct Expansion {
  std::vector<double> coefficients;
  double residual = 0;
  bool degenerate = false;
  std::vector<double> null_vector;  // normalized to a unit first nonzero component
};

// Least squares over the flattened canonical entries.
inline Expansion expand_in_basis(const SymTensor& t, const VmBasis& basis, double tol = default_tolerance) {
  for (auto& [label, e] : basis.elements)
    if (e.order() != t.order() || e.dim() != t.dim()) throw InvalidInput("basis shape mismatch for " + label);
  std::vector<std::uint64_t> rows;
  auto collect = [&](const SymTensor& x) {
    for (std::size_t k = 0; k < x.nnz(); ++k) rows.push_back(x.rank_at(k));
  };
  collect(t);
  for (auto& [label, e] : basis.elements) collect(e);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  const int nb = static_cast<int>(basis.elements.size());
  Eigen::MatrixXd A(rows.size(), nb);
  Eigen::VectorXd y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y(i) = t.at_rank(rows[i]);
    for (int j = 0; j < nb; ++j) A(i, j) = basis.elements[j].second.at_rank(rows[i]);
  }
  Expansion ex;
  if (rows.empty() || nb == 0) {
    ex.coefficients.assign(nb, 0.0);
    return ex;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  svd.setThreshold(1e-10);
  Eigen::VectorXd c = svd.solve(y);
  ex.coefficients.assign(c.data(), c.data() + nb);
  ex.residual = (A * c - y).cwiseAbs().maxCoeff();
  if (nb > 0 && (smax == 0.0 || sv(sv.size() - 1) < 1e-10 * smax)) {
    ex.degenerate = true;
    Eigen::VectorXd nv = svd.matrixV().col(nb - 1);
    int lead = 0;
    while (lead < nb && std::abs(nv(lead)) < tol) ++lead;
    if (lead < nb) nv /= nv(lead);
    ex.null_vector.assign(nv.data(), nv.data() + nb);
  }
  return ex;
}

}  // namespace lieinv
