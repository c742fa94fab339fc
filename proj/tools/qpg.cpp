// qpg: command-line front end.
//
//   qpg verify -c scenario.json [--json out.json]
//   qpg demo <wedge|bouquet> [--n N] [--m M] [--theta T] [--json out.json]
//   qpg reduce "<expr>" --n N [--collapse]
//
// Exit codes: 0 all asserted checks pass, 1 an asserted check failed,
// 2 input or structural error. QPG_SEED overrides the scenario seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "qpg/ncalg.hpp"
#include "qpg/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

void apply_seed_override(qpg::Scenario& s) {
  const char* env = std::getenv("QPG_SEED");
  if (!env || !*env) return;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    s.seed = v;
  } catch (const std::exception&) {
    throw qpg::StructuralError(std::string("QPG_SEED is not an unsigned integer: ") + env);
  }
}

int emit(const qpg::RunReport& report, const std::string& json_path) {
  std::cout << qpg::format_human(report);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw qpg::StructuralError("cannot write " + json_path);
    out << qpg::to_json(report).dump(2) << '\n';
  }
  return report.overall ? kExitPass : kExitFail;
}

int run_verify(const std::string& path, const std::string& json_path) {
  std::ifstream in(path);
  if (!in) throw qpg::StructuralError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw qpg::StructuralError(std::string("malformed JSON: ") + e.what());
  }
  auto scenario = qpg::scenario_from_json(j);
  apply_seed_override(scenario);
  return emit(qpg::run_scenario(scenario), json_path);
}

int run_demo(const std::string& name, std::size_t n, std::size_t m, double theta,
             const std::string& json_path) {
  std::string warning;
  auto scenario = qpg::demo_scenario(name, n, m, theta, &warning);
  if (!warning.empty()) std::cerr << "warning: " << warning << '\n';
  apply_seed_override(scenario);
  return emit(qpg::run_scenario(scenario), json_path);
}

int run_reduce(const std::string& expr, std::size_t n, bool collapse) {
  try {
    const auto p = qpg::ncalg::parse_expression(expr, n);
    const auto r = collapse ? qpg::ncalg::collapse_sums(p) : qpg::ncalg::normal_form(p);
    std::cout << qpg::ncalg::to_string(r) << '\n';
    return kExitPass;
  } catch (const qpg::ncalg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n'
              << "  " << expr << '\n'
              << "  " << std::string(std::min(e.position(), expr.size()), ' ') << "^\n";
    return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum permutation group actions on glued spaces: verification tool"};
  app.require_subcommand(1);

  std::string scenario_path, json_path;
  auto* verify = app.add_subcommand("verify", "Run the checks of a scenario file");
  verify->add_option("-c,--config", scenario_path, "Scenario JSON")->required();
  verify->add_option("--json", json_path, "Write the JSON report here");

  std::string demo_name;
  std::size_t demo_n = 4, demo_m = 0;
  double theta = std::numbers::pi / 4;
  auto* demo = app.add_subcommand("demo", "Run a canned wedge or bouquet scenario");
  demo->add_option("name", demo_name, "wedge or bouquet")->required();
  demo->add_option("--n", demo_n, "Fiber size n");
  demo->add_option("--m", demo_m, "Base sample count (default 5 for wedge, 6 for bouquet)");
  demo->add_option("--theta", theta, "Two-projection angle in radians");
  demo->add_option("--json", json_path, "Write the JSON report here");

  std::string expr;
  std::size_t reduce_n = 0;
  bool collapse = false;
  auto* reduce = app.add_subcommand("reduce", "Print the normal form of an expression");
  reduce->add_option("expr", expr, "Expression, e.g. \"a(1,2)*a(1,2)\"")->required();
  reduce->add_option("--n", reduce_n, "Generator range 1..n")->required();
  reduce->add_flag("--collapse", collapse, "Also collapse full row and column sums");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*verify) return run_verify(scenario_path, json_path);
    if (*demo) {
      if (demo_m == 0) demo_m = demo_name == "bouquet" ? 6 : 5;
      return run_demo(demo_name, demo_n, demo_m, theta, json_path);
    }
    if (*reduce) return run_reduce(expr, reduce_n, collapse);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
