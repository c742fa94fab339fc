#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpg/magic.hpp"
#include "qpg/report.hpp"
#include "qpg/spaces.hpp"

namespace qpg {

inline const std::vector<std::string> kCheckNames = {
    "magic",     "symbolic", "coassoc",   "invariance", "technical",
    "faithful",  "ergodic",  "connected", "density",    "homomorphism"};

/// A verification run: which representation, which glued space, which checks.
struct Scenario {
  /// Unitary spec as written: inline MagicUnitary JSON,
  /// {"two_projection": {"theta": t}} or {"permutation": [σ(1), ..., σ(n)]}.
  nlohmann::json unitary;
  GluingSpec space;
  double tolerance = 1e-10;
  std::vector<std::string> checks = kCheckNames;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
};

/// Throws StructuralError on any schema or constraint violation.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);
MagicUnitary resolve_unitary(const nlohmann::json& spec);

struct CheckRun {
  CheckReport report;
  double seconds = 0.0;
};

struct RunReport {
  Scenario scenario;
  std::vector<CheckRun> checks;
  /// False iff some asserted check failed; informational checks never count.
  bool overall = true;
};

/// Runs the declared checks in order. Structural errors propagate.
RunReport run_scenario(const Scenario& s);
CheckReport run_check(const std::string& name, const Scenario& s, const MagicUnitary& u,
                      const GluedSpace& g);

/// Deterministic report JSON; wall times live only under "timing".
nlohmann::json to_json(const RunReport& r);
std::string format_human(const RunReport& r);

/// Canned scenarios: "wedge" (interval base) or "bouquet" (circle base), with
/// the first base point glued. n = 4 uses the two-projection representation;
/// other n fall back to the cyclic permutation and set `warning`.
Scenario demo_scenario(const std::string& name, std::size_t n, std::size_t m, double theta,
                       std::string* warning = nullptr);

}  // namespace qpg
