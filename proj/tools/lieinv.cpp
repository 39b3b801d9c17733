#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <lieinv/cli.hpp>

namespace {

using lieinv::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--algebra,-a", cfg.algebra, "su<n>, so<n>, sp<l> or Cartan label (A2, B2, C3, D4)")->capture_default_str();
  sub->add_option("--tolerance", cfg.tolerance, "residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--format", cfg.format, "tsv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, lieinv::cli::Format>{{"tsv", lieinv::cli::Format::tsv}, {"json", lieinv::cli::Format::json}}));
  sub->add_option("--out,-o", cfg.out, "output path (directory for tables)");
  sub->add_flag("--exact", cfg.exact, "print values as a*sqrt(b)/c where recognized");
}

void add_order(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--order,-m", cfg.order, "order m of the symmetric invariant (cocycle order 2m-1)")->required();
  sub->add_option("--method", cfg.method, "reduced or full antisymmetrization")
      ->transform(CLI::CheckedTransformer(std::map<std::string, lieinv::CocycleMethod>{
          {"reduced", lieinv::CocycleMethod::reduced}, {"full", lieinv::CocycleMethod::full}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant tensors, cocycles and identities of simple Lie algebras"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string import_path;

  auto* tables = app.add_subcommand("tables", "f, d and cocycle coordinate tables");
  add_common(tables, cfg);
  auto* verify = app.add_subcommand("verify", "run the property suite for one algebra");
  add_common(verify, cfg);
  verify->add_flag("!--no-identities", cfg.identities, "skip the su(n) trace identity suite");
  auto* cocycle = app.add_subcommand("cocycle", "cocycle of order 2m-1 from the order-m symmetric trace");
  add_common(cocycle, cfg);
  add_order(cocycle, cfg);
  auto* ttensor = app.add_subcommand("ttensor", "t-tensor of order m and its scalar K(m)");
  add_common(ttensor, cfg);
  add_order(ttensor, cfg);
  auto* dual = app.add_subcommand("dual", "Hodge duality relations of the primitive tower");
  add_common(dual, cfg);
  auto* identities = app.add_subcommand("identities", "trace and partition identities");
  add_common(identities, cfg);
  auto* exporter = app.add_subcommand("export", "write a named tensor in sparse format");
  add_common(exporter, cfg);
  exporter->add_option("--tensor,-t", cfg.tensor, "f, d, d<m>, k<m>, v, v<2p>, pf, omega<q>, omegapf, t<m>, tpf")->required();
  auto* importer = app.add_subcommand("import", "read a sparse tensor file");
  add_common(importer, cfg);
  importer->add_option("path", import_path, "tensor file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tables->parsed()) return lieinv::cli::cmd_tables(cfg, std::cout);
    if (verify->parsed()) return lieinv::cli::cmd_verify(cfg, std::cout);
    if (cocycle->parsed()) return lieinv::cli::cmd_cocycle(cfg, std::cout);
    if (ttensor->parsed()) return lieinv::cli::cmd_ttensor(cfg, std::cout, std::cerr);
    if (dual->parsed()) return lieinv::cli::cmd_dual(cfg, std::cout);
    if (identities->parsed()) return lieinv::cli::cmd_identities(cfg, std::cout);
    if (exporter->parsed()) return lieinv::cli::cmd_export(cfg, std::cout);
    if (importer->parsed()) return lieinv::cli::cmd_import(import_path, cfg, std::cout);
  } catch (const lieinv::Error& e) {
    std::cerr << "lieinv: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
