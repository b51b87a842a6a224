#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncf/cli.hpp"
#include "ncf/dsl.hpp"

using namespace ncf;
using namespace ncf::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 1, 1);
  }
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative filtrations, etale lifts, microlocalization and finite Fourier-Mukai kernels"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string json_out = "-";
  app.add_option("--json", json_out, "Report destination, - for standard output");

  AlgOptions alg_opt;
  std::string pres_file;
  bool print_only = false;
  auto* alg = app.add_subcommand("alg", "Truncated algebra, NC filtration and r_d quotients");
  alg->add_option("--pres", pres_file, "Presentation file")->required();
  alg->add_option("--d", alg_opt.max_d, "Top filtration level");
  alg->add_option("--rd", alg_opt.rd_top, "Top r_d quotient");
  alg->add_flag("--print", print_only, "Print the canonical presentation and stop");

  auto* etale = app.add_subcommand("etale", "Etale lifting");
  etale->require_subcommand(1);
  std::string diagram_file, family_file, alpha_file;
  auto* lift = etale->add_subcommand("lift", "Lift one diagram");
  lift->add_option("--diagram", diagram_file, "Diagram JSON")->required();
  auto* check = etale->add_subcommand("check", "Check a generated family");
  check->add_option("--family", family_file, "Family spec JSON")->required();
  check->add_option("--alpha", alpha_file, "JSON with the constants a");

  MicrolocOptions ml_opt;
  auto* micro = app.add_subcommand("microloc", "Microlocalization");
  micro->require_subcommand(1);
  auto* grn = micro->add_subcommand("grn", "gr_(n), its checks and the localization");
  std::string ml_pres, localize, lift_poly;
  int order = -1;
  grn->add_option("--pres", ml_pres, "Presentation file")->required();
  grn->add_option("--n", ml_opt.n, "Level n");
  grn->add_option("--localize", localize, "f=<poly>");
  grn->add_option("--lift", lift_poly, "Second lift of f");
  grn->add_option("--order", order, "Tower truncation order, defaults to the bound");

  FmOptions fm_opt;
  auto* fm = app.add_subcommand("fm", "Finite Fourier-Mukai model");
  fm->add_option("--group", fm_opt.group, "Group, e.g. Z4xZ2")->required();
  fm->add_option("--algebra", fm_opt.algebra, "Generators, e.g. shift=(1,0);twist=(0,1)");
  fm->add_option("--check", fm_opt.check, "all or a comma list");
  fm->add_option("--seed", fm_opt.seed, "Seed");
  fm->add_option("--samples", fm_opt.samples, "Random kernel pairs");
  fm->add_option("--modules", fm_opt.modules, "Random modules");

  OracleOptions or_opt;
  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->add_option("--kind", or_opt.kind, "filtration | orthogonality | assoc")->required();
  oracle->add_option("--gens", or_opt.gens, "Free generators");
  oracle->add_option("--bound", or_opt.bound, "Degree bound");
  oracle->add_option("--group", or_opt.group, "Group");
  oracle->add_option("--seed", or_opt.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command = "ncfourier";
  try {
    Report rep;
    if (*alg) {
      command = "alg";
      const Presentation P = parse_presentation(read_file(pres_file));
      if (print_only) return emit(print_presentation(P), json_out);
      rep = run_alg(P, alg_opt);
    } else if (*lift) {
      command = "etale lift";
      rep = run_etale_lift(read_json(diagram_file));
    } else if (*check) {
      command = "etale check";
      std::optional<Json> alpha;
      if (!alpha_file.empty()) alpha = read_json(alpha_file);
      rep = run_etale_check(read_json(family_file), alpha);
    } else if (*grn) {
      command = "microloc grn";
      if (!localize.empty()) ml_opt.localize = localize;
      if (!lift_poly.empty()) ml_opt.lift = lift_poly;
      if (order >= 0) ml_opt.order = order;
      rep = run_microloc(parse_presentation(read_file(ml_pres)), ml_opt);
    } else if (*fm) {
      command = "fm";
      rep = run_fm(fm_opt);
    } else if (*oracle) {
      command = "oracle";
      or_opt.budget = budget_from_env();
      rep = run_oracle(or_opt);
    }
    const int wrote = emit(dump(rep.to_json()), json_out);
    if (wrote) return wrote;
    return rep.ok() ? 0 : 1;
  } catch (const Error& e) {
    emit(dump(error_json(command, e)), json_out);
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    const InvalidArgument err(std::string("malformed input: ") + e.what());
    emit(dump(error_json(command, err)), json_out);
    std::cerr << err.kind() << ": " << err.what() << "\n";
    return exit_code_for(err);
  }
}
