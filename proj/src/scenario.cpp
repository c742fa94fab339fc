#include "qpg/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "qpg/coaction.hpp"
#include "qpg/json_util.hpp"
#include "qpg/ncalg.hpp"

namespace qpg {

MagicUnitary resolve_unitary(const nlohmann::json& spec) {
  if (!spec.is_object()) throw StructuralError("unitary must be an object");
  try {
    if (spec.contains("two_projection")) {
      const auto& tp = spec.at("two_projection");
      if (!tp.contains("theta") || !tp.at("theta").is_number())
        throw StructuralError("two_projection needs a numeric theta");
      return build_two_projection_magic(tp.at("theta").get<double>());
    }
    if (spec.contains("permutation")) {
      const auto& p = spec.at("permutation");
      if (!p.is_array() || p.size() > 1024) throw StructuralError("permutation must be a list");
      std::vector<std::size_t> sigma;
      for (const auto& v : p) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
          throw StructuralError("permutation entries must be positive integers");
        sigma.push_back(v.get<std::size_t>());
      }
      return permutation_magic(sigma);
    }
    return magic_from_json(spec);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad unitary: ") + e.what());
  }
}

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw StructuralError("scenario must be a JSON object");
  Scenario s;
  try {
    if (!j.contains("unitary")) throw StructuralError("scenario needs 'unitary'");
    if (!j.contains("space")) throw StructuralError("scenario needs 'space'");
    s.unitary = j.at("unitary");
    s.space = gluing_from_json(j.at("space"));
    if (j.contains("tolerance")) {
      if (!j.at("tolerance").is_number()) throw StructuralError("tolerance must be a number");
      s.tolerance = j.at("tolerance").get<double>();
      if (!(s.tolerance >= 0.0) || !std::isfinite(s.tolerance))
        throw StructuralError("tolerance must be finite and nonnegative");
    }
    if (j.contains("checks")) {
      if (!j.at("checks").is_array()) throw StructuralError("checks must be a list");
      s.checks.clear();
      for (const auto& c : j.at("checks")) {
        if (!c.is_string()) throw StructuralError("check names must be strings");
        const auto name = c.get<std::string>();
        if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end())
          throw StructuralError("unknown check '" + name + "'");
        s.checks.push_back(name);
      }
    }
    if (j.contains("seed")) s.seed = detail::read_count(j, "seed", UINT64_MAX);
    if (j.contains("trials")) s.trials = detail::read_count(j, "trials", 100000);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad scenario: ") + e.what());
  }
  const auto u = resolve_unitary(s.unitary);
  if (u.n() != s.space.n)
    throw StructuralError("space n (" + std::to_string(s.space.n) + ") differs from unitary n (" +
                          std::to_string(u.n()) + ")");
  return s;
}

nlohmann::json to_json(const Scenario& s) {
  return {{"unitary", s.unitary}, {"space", to_json(s.space)}, {"tolerance", s.tolerance},
          {"checks", s.checks},   {"seed", s.seed},            {"trials", s.trials}};
}

namespace {

CheckReport merge(std::string name, const std::vector<CheckReport>& parts) {
  CheckReport r;
  r.check = std::move(name);
  bool any_fail = false, all_pass = true;
  for (const auto& p : parts) {
    r.metrics[p.check] = p.metrics;
    if (!p.worst_case.empty()) r.worst_case[p.check] = p.worst_case;
    r.tolerance = std::max(r.tolerance, p.tolerance);
    if (p.seed) r.seed = p.seed;
    any_fail |= p.failed();
    all_pass &= p.passed();
  }
  if (any_fail)
    r.pass = false;
  else if (all_pass)
    r.pass = true;
  return r;
}

CheckReport technical_check(const Scenario& s, const MagicUnitary& u, const GluedSpace& g) {
  const Tolerance tol(s.tolerance);
  auto functions = g.quotient_basis();
  for (auto& f : random_quotient_functions(g, s.trials, s.seed)) functions.push_back(std::move(f));
  std::vector<Complex> ramp(g.m());
  for (std::size_t y = 0; y < g.m(); ++y) ramp[y] = static_cast<double>(y + 1);
  functions.push_back(GridFunction::base_lift(g.n(), ramp));

  double worst = 0.0;
  std::size_t worst_index = 0, disagreements = 0, numeric_failures = 0;
  for (std::size_t t = 0; t < functions.size(); ++t) {
    const auto num = check_technical_lemma(functions[t], u, tol);
    const auto sym = check_technical_lemma_symbolic(functions[t]);
    const double v = num.metrics["max_violation"].get<double>();
    if (v > worst) {
      worst = v;
      worst_index = t;
    }
    if (!num.passed()) ++numeric_failures;
    if (num.passed() != sym.passed()) ++disagreements;
  }
  CheckReport r;
  r.check = "technical";
  r.tolerance = s.tolerance;
  r.seed = s.seed;
  r.metrics = {{"functions", functions.size()},
               {"max_violation", worst},
               {"numeric_failures", numeric_failures},
               {"symbolic_disagreements", disagreements}};
  r.worst_case = {{"function", worst_index}};
  r.pass = numeric_failures == 0 && disagreements == 0;
  return r;
}

}  // namespace

CheckReport run_check(const std::string& name, const Scenario& s, const MagicUnitary& u,
                      const GluedSpace& g) {
  const Tolerance tol(s.tolerance);
  if (name == "magic") {
    auto r = verify_magic_unitary(u, tol);
    const auto cert = genuineness_certificate(u);
    r.metrics["genuine_witness"] = cert.has_value();
    if (cert) {
      r.metrics["commutator_norm"] = cert->commutator_norm;
      r.worst_case["genuineness"] = {{"first", {cert->first.first, cert->first.second}},
                                     {"second", {cert->second.first, cert->second.second}}};
    }
    return r;
  }
  if (name == "symbolic") return ncalg::relation_suite_symbolic(u.n());
  if (name == "coassoc") {
    auto delta_valid = verify_magic_unitary(delta_rep(u), tol);
    delta_valid.check = "delta_rep";
    return merge("coassoc", {ncalg::coassoc_check_symbolic(u.n()), delta_valid,
                             check_coassociativity_rep(g, u, tol)});
  }
  if (name == "invariance") return check_invariance(g, u, s.trials, tol, s.seed);
  if (name == "technical") return technical_check(s, u, g);
  if (name == "faithful") return check_faithful_slices(g, u, tol);
  if (name == "ergodic") return fixed_point_space(g, u, tol);
  if (name == "connected") {
    const std::size_t comps = connected_components(g);
    const std::size_t base = base_components(s.space.base);
    const bool hypothesis = base == 1 && !s.space.glued.empty();
    CheckReport r;
    r.check = "connected";
    r.tolerance = 0.0;
    r.metrics = {{"components", comps},
                 {"classes", g.quotient_dim()},
                 {"base_components", base},
                 {"hypothesis_holds", hypothesis}};
    r.pass = !hypothesis || comps == 1;
    return r;
  }
  if (name == "density") return density_rank(g, u, tol);
  if (name == "homomorphism") return check_homomorphism(g, u, s.trials, tol, s.seed);
  throw StructuralError("unknown check '" + name + "'");
}

RunReport run_scenario(const Scenario& s) {
  const auto u = resolve_unitary(s.unitary);
  if (u.n() != s.space.n) throw StructuralError("space n differs from unitary n");
  const GluedSpace g(s.space);
  RunReport out;
  out.scenario = s;
  for (const auto& name : s.checks) {
    const auto start = std::chrono::steady_clock::now();
    auto report = run_check(name, s, u, g);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    if (report.failed()) out.overall = false;
    out.checks.push_back({std::move(report), dt.count()});
  }
  return out;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json timing = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back(to_json(c.report));
    timing.push_back({{"check", c.report.check}, {"seconds", c.seconds}});
  }
  return {{"scenario", to_json(r.scenario)},
          {"checks", std::move(checks)},
          {"overall", r.overall},
          {"timing", std::move(timing)}};
}

namespace {

void flatten_metrics(const nlohmann::json& j, const std::string& prefix, std::ostringstream& os) {
  for (const auto& [key, v] : j.items()) {
    const std::string k = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      flatten_metrics(v, k, os);
    } else if (v.is_number_float()) {
      os << ' ' << k << '=' << std::setprecision(3) << v.get<double>();
    } else if (v.is_string()) {
      os << ' ' << k << "=\"" << v.get<std::string>() << '"';
    } else {
      os << ' ' << k << '=' << v.dump();
    }
  }
}

}  // namespace

std::string format_human(const RunReport& r) {
  std::ostringstream os;
  const auto& sp = r.scenario.space;
  os << "scenario: n=" << sp.n << " space=" << sp.base.kind << "(m=" << sp.base.m << ") glued=[";
  bool first = true;
  for (auto y : sp.glued) {
    os << (first ? "" : ",") << y;
    first = false;
  }
  os << "] tol=" << r.scenario.tolerance << " seed=" << r.scenario.seed
     << " trials=" << r.scenario.trials << '\n';
  for (const auto& c : r.checks) {
    os << '[' << verdict_label(c.report) << "] " << std::left << std::setw(13) << c.report.check;
    std::ostringstream metrics;
    flatten_metrics(c.report.metrics, "", metrics);
    os << metrics.str() << '\n';
  }
  os << "overall: " << (r.overall ? "PASS" : "FAIL") << '\n';
  return os.str();
}

Scenario demo_scenario(const std::string& name, std::size_t n, std::size_t m, double theta,
                       std::string* warning) {
  if (n < 1) throw StructuralError("demo needs n >= 1");
  if (n > 64) throw StructuralError("demo n is limited to 64");
  if (m > 4096) throw StructuralError("demo m is limited to 4096");
  if (!std::isfinite(theta)) throw StructuralError("theta must be finite");
  Scenario s;
  if (name == "wedge")
    s.space.base = build_interval_space(m);
  else if (name == "bouquet")
    s.space.base = build_circle_space(m);
  else
    throw StructuralError("unknown demo '" + name + "' (expected wedge or bouquet)");
  s.space.n = n;
  s.space.glued = {1};
  if (n == 4) {
    s.unitary = {{"two_projection", {{"theta", theta}}}};
  } else {
    std::vector<std::size_t> shift(n);
    for (std::size_t i = 0; i < n; ++i) shift[i] = (i + 1) % n + 1;
    s.unitary = {{"permutation", shift}};
    if (warning)
      *warning = "two-projection representation needs n = 4; using the cyclic permutation for n = " +
                 std::to_string(n);
  }
  return s;
}

}  // namespace qpg
