#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "cocycles.hpp"
#include "duality.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "suite.hpp"
#include "tensors.hpp"
#include "towers.hpp"
#include "ttensors.hpp"

namespace lieinv::cli {

enum class Format { tsv, json };

struct RunConfig {
  std::string algebra = "su3";
  double tolerance = default_tolerance;
  std::uint64_t seed = 42;
  Format format = Format::tsv;
  std::string out;
  bool exact = false;
  int order = 0;
  std::string tensor;
  CocycleMethod method = CocycleMethod::reduced;
  bool identities = true;

  void validate() const {
    if (!(tolerance > 0)) throw InvalidInput("tolerance must be positive");
    AlgebraSpec::parse(algebra);
  }
};

using AnyTensor = std::variant<SymTensor, AltTensor>;

// "su(3)" -> "su3"
inline std::string slug(const std::string& label) {
  std::string s;
  for (char c : label)
    if (c != '(' && c != ')') s += c;
  return s;
}

inline int parse_suffix(const std::string& name, std::size_t prefix) {
  const std::string digits = name.substr(prefix);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidInput("unknown tensor '" + name + "'");
  return std::stoi(digits);
}

// f, d, d<m>, k<m>, v, v<2p>, pf, omega<q>, omegapf, t<m>, tpf
inline AnyTensor resolve_tensor(const std::string& name, const GeneratorSet& g) {
  const bool su = g.spec.family == Family::A;
  auto f = structure_constants(g);
  auto need_su = [&] {
    if (!su) throw UnsupportedFamily("tensor '" + name + "' is defined for su(n) only");
  };
  auto d = [&] { return g.n() >= 3 ? d_tensor(g) : SymTensor(3, g.dim()); };
  if (name == "f") return f;
  if (name == "d") {
    need_su();
    return d();
  }
  if (name == "v") return v_tensor(g).v;
  if (name == "pf") return pfaffian_tensor(g);
  if (name == "omegapf") return cocycle_from_sym(f, pfaffian_tensor(g));
  if (name == "tpf") return t_tensor(cocycle_from_sym(f, pfaffian_tensor(g)), f);
  if (name.rfind("omega", 0) == 0) {
    const int q = parse_suffix(name, 5);
    if (q < 3 || q % 2 == 0) throw InvalidInput("cocycle order must be odd and >= 3");
    if (q == 3) return f;
    if (su && q == 5 && g.n() >= 3) return omega5(f, d());
    if (su && q == 7 && g.n() >= 3) return omega7_su(f, d());
    return cocycle_from_sym(f, sym_trace_tensor(g, (q + 1) / 2));
  }
  if (name[0] == 'd') {
    need_su();
    return d_family(d(), parse_suffix(name, 1));
  }
  if (name[0] == 'k') return sym_trace_tensor(g, parse_suffix(name, 1));
  if (name[0] == 'v') return v_family(v_tensor(g).v, parse_suffix(name, 1));
  if (name[0] == 't') {
    const int m = parse_suffix(name, 1);
    if (m == 2) return t_tensor(f, f);
    return t_tensor(cocycle_from_sym(f, sym_trace_tensor(g, m)), f);
  }
  throw InvalidInput("unknown tensor '" + name + "'");
}

template <Kind K>
nlohmann::ordered_json tensor_json(const SparseTensor<K>& t, const std::string& algebra, bool exact) {
  nlohmann::ordered_json j;
  j["kind"] = K == Kind::sym ? "sym" : "alt";
  j["order"] = t.order();
  j["dim"] = t.dim();
  j["algebra"] = algebra;
  auto entries = nlohmann::ordered_json::array();
  for (auto& [idx, v] : sorted_entries(t)) {
    nlohmann::ordered_json e;
    e["index"] = idx;
    e["value"] = v;
    if (exact)
      if (auto q = recognize_radical(v)) e["exact"] = format_radical(*q);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline void emit_tensor(std::ostream& os, const AnyTensor& t, const std::string& algebra, const RunConfig& cfg) {
  std::visit(
      [&](const auto& x) {
        if (cfg.format == Format::json)
          os << tensor_json(x, algebra, cfg.exact).dump(1) << '\n';
        else
          write_tensor(os, x, algebra, cfg.exact);
      },
      t);
}

inline std::string status(const IdentityReport& r) { return r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL"; }

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline void emit_reports(std::ostream& os, const std::vector<IdentityReport>& reports, Format fmt) {
  int pass = 0, fail = 0, skip = 0;
  for (auto& r : reports) (r.skipped ? skip : r.pass ? pass : fail)++;
  if (fmt == Format::json) {
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : reports) {
      nlohmann::ordered_json j;
      j["status"] = status(r);
      j["algebra"] = r.algebra;
      j["name"] = r.name;
      j["residual"] = r.max_residual;
      j["tolerance"] = r.tolerance;
      j["details"] = r.details;
      arr.push_back(std::move(j));
    }
    nlohmann::ordered_json top;
    top["checks"] = std::move(arr);
    top["passed"] = pass;
    top["failed"] = fail;
    top["skipped"] = skip;
    os << top.dump(1) << '\n';
    return;
  }
  os << "status\talgebra\tcheck\tresidual\ttolerance\tdetails\n";
  for (auto& r : reports)
    os << status(r) << '\t' << r.algebra << '\t' << r.name << '\t' << sci(r.max_residual) << '\t' << sci(r.tolerance)
       << '\t' << r.details << '\n';
  os << "# " << reports.size() << " checks: " << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
}

// Writes to cfg.out when set, otherwise to the given stream.
template <class Fn>
void with_output(const RunConfig& cfg, std::ostream& fallback, Fn&& fn) {
  if (cfg.out.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream os(cfg.out);
  if (!os) throw Error("cannot open '" + cfg.out + "' for writing");
  fn(os);
  if (!os) throw Error("write to '" + cfg.out + "' failed");
}

// f, d, Omega(5), Omega(7) listings; one file each when cfg.out names a directory.
inline int cmd_tables(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  auto g = build_algebra(cfg.algebra);
  std::vector<std::pair<std::string, AnyTensor>> tables;
  auto f = structure_constants(g);
  tables.emplace_back("f", f);
  if (g.spec.family == Family::A) {
    SymTensor d = g.n() >= 3 ? d_tensor(g) : SymTensor(3, g.dim());
    tables.emplace_back("d", d);
    if (g.n() >= 3) tables.emplace_back("omega5", omega5(f, d));
    if (g.n() >= 4) tables.emplace_back("omega7", omega7_su(f, d));
  }
  const std::string label = g.spec.label;
  const std::string ext = cfg.format == Format::json ? ".json" : ".tsv";
  if (!cfg.out.empty()) {
    std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory '" + cfg.out + "': " + ec.message());
    for (auto& [name, t] : tables) {
      auto path = dir / (slug(label) + "_" + name + ext);
      std::ofstream file(path);
      if (!file) throw Error("cannot open '" + path.string() + "' for writing");
      emit_tensor(file, t, label, cfg);
      if (!file) throw Error("write to '" + path.string() + "' failed");
      os << path.string() << '\n';
    }
    return 0;
  }
  bool first = true;
  for (auto& [name, t] : tables) {
    if (!first) os << '\n';
    first = false;
    emit_tensor(os, t, label, cfg);
  }
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  SuiteOptions opt;
  opt.tolerance = cfg.tolerance;
  opt.seed = cfg.seed;
  opt.identities = cfg.identities;
  auto reports = verify_algebra(AlgebraSpec::parse(cfg.algebra), opt);
  with_output(cfg, os, [&](std::ostream& o) { emit_reports(o, reports, cfg.format); });
  return all_pass(reports) ? 0 : 1;
}

inline int cmd_cocycle(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  if (cfg.order < 2) throw InvalidInput("--order m (>= 2) selects the cocycle of order 2m-1");
  auto g = build_algebra(cfg.algebra);
  auto f = structure_constants(g);
  AltTensor omega = cfg.order == 2 ? f : cocycle_from_sym(f, sym_trace_tensor(g, cfg.order), cfg.method, cfg.tolerance);
  with_output(cfg, os, [&](std::ostream& o) { emit_tensor(o, omega, g.spec.label, cfg); });
  return 0;
}

inline int cmd_ttensor(const RunConfig& cfg, std::ostream& os, std::ostream& info) {
  cfg.validate();
  if (cfg.order < 2) throw InvalidInput("--order m must be >= 2");
  auto g = build_algebra(cfg.algebra);
  auto f = structure_constants(g);
  AltTensor omega = cfg.order == 2 ? f : cocycle_from_sym(f, sym_trace_tensor(g, cfg.order), cfg.method, cfg.tolerance);
  auto t = t_tensor(omega, f);
  with_output(cfg, os, [&](std::ostream& o) { emit_tensor(o, t, g.spec.label, cfg); });
  info << "K(" << cfg.order << ") = " << format_double(k_scalar(t));
  if (g.spec.family == Family::A)
    if (auto cf = closed_form_K(cfg.order, g.n()); cf && !std::isnan(*cf)) info << "  closed form " << format_double(*cf);
  info << '\n';
  return 0;
}

inline int cmd_dual(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  auto tw = build_tower(build_algebra(cfg.algebra));
  std::vector<IdentityReport> reports;
  if (!tw.complete()) {
    for (auto& e : tw.entries)
      if (!e.built) reports.push_back(skipped_report("duality relations", tw.g.spec.label, e.skip_reason));
  } else {
    reports = check_duality(tw.cocycles(), tw.g.spec.label, cfg.tolerance);
  }
  with_output(cfg, os, [&](std::ostream& o) { emit_reports(o, reports, cfg.format); });
  return all_pass(reports) ? 0 : 1;
}

inline int cmd_identities(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  auto g = build_algebra(cfg.algebra);
  std::vector<IdentityReport> reports;
  if (g.spec.family == Family::A && g.n() >= 3 && g.n() <= 6) {
    TraceSuiteOptions to;
    to.tolerance = cfg.tolerance;
    to.seed = cfg.seed;
    reports = trace_identity_suite(g.n(), to);
  } else if (g.spec.family == Family::A) {
    reports.push_back(skipped_report("trace identity suite", g.spec.label, "covers su(3) to su(6)"));
  }
  for (auto& r : cayley_hamilton_check(g, 20, cfg.seed, cfg.tolerance)) reports.push_back(r);
  with_output(cfg, os, [&](std::ostream& o) { emit_reports(o, reports, cfg.format); });
  return all_pass(reports) ? 0 : 1;
}

inline int cmd_export(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  if (cfg.tensor.empty()) throw InvalidInput("--tensor is required");
  auto g = build_algebra(cfg.algebra);
  auto t = resolve_tensor(cfg.tensor, g);
  with_output(cfg, os, [&](std::ostream& o) { emit_tensor(o, t, g.spec.label, cfg); });
  return 0;
}

// Reads a tensor file, prints a summary, and re-emits it canonically to cfg.out.
inline int cmd_import(const std::string& path, const RunConfig& cfg, std::ostream& os) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  TensorFile tf;
  try {
    tf = read_tensor(in);
  } catch (const ParseError& e) {
    throw Error(path + ": " + std::string(e.what()));
  }
  AnyTensor t = tf.kind == Kind::sym ? AnyTensor(tf.as_sym()) : AnyTensor(tf.as_alt());
  std::size_t nnz = std::visit([](const auto& x) { return x.nnz(); }, t);
  os << "kind=" << (tf.kind == Kind::sym ? "sym" : "alt") << " order=" << tf.order << " dim=" << tf.dim
     << " algebra=" << tf.algebra << " entries=" << nnz << '\n';
  if (!cfg.out.empty()) {
    RunConfig c = cfg;
    with_output(c, os, [&](std::ostream& o) { emit_tensor(o, t, tf.algebra, c); });
  }
  return 0;
}

}  // namespace lieinv::cli
