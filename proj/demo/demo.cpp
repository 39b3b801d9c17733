// su(3) walkthrough: tables, the cubic t tensor, K scalars and duality.

#include <cmath>
#include <iostream>

#include <lieinv.hpp>

using namespace lieinv;

namespace {

template <Kind K>
void print_table(const std::string& title, const SparseTensor<K>& t) {
  std::cout << title << " (" << t.nnz() << " nonzero)\n";
  for (auto& [idx, v] : sorted_entries(t)) {
    std::cout << "  ";
    for (int i : idx) std::cout << i << ' ';
    std::cout << "= " << format_value(v, true) << '\n';
  }
}

}  // namespace

int main() {
  auto g = build_algebra("su3");
  auto f = structure_constants(g);
  auto d = d_tensor(g);
  print_table("f_abc", f);
  print_table("d_abc", d);
  auto o5 = omega5(f, d);
  print_table("Omega_abcde", o5);

  auto tw = build_tower(g);
  std::cout << "\nprimitive tower of " << g.spec.label << '\n';
  for (auto& e : tw.entries) {
    auto cf = closed_form_K(e.m, g.n());
    std::cout << "  m=" << e.m << "  Omega(" << e.omega.order() << ") nnz=" << e.omega.nnz()
              << "  K=" << format_double(k_scalar(e.t));
    if (cf) std::cout << "  closed form " << format_double(*cf);
    std::cout << '\n';
  }
  std::cout << "  t(2), t(3) orthogonal: residual " << orthogonality_check({tw.entries[0].t, tw.entries[1].t}) << '\n';

  auto dual = epsilon_contraction({f}).scaled(1.0 / (2.0 * std::sqrt(3.0)));
  std::cout << "\nOmega(5) = eps.f / (3! 2 sqrt3): max deviation " << max_abs_diff(dual, o5) << '\n';
  for (auto& r : check_duality(tw.cocycles(), g.spec.label))
    std::cout << "  " << (r.pass ? "PASS " : "FAIL ") << r.name << "  " << r.details << '\n';

  auto t4 = t_tensor(cocycle_from_sym(f, sym_trace_tensor(g, 4)), f);
  std::cout << "\nbeyond the rank: K(4) of su(3) = " << k_scalar(t4) << '\n';
  return 0;
}
