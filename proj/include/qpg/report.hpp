#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace qpg {

/// Outcome of one verification. `pass` is empty for informational results
/// (e.g. density on a non-scalar representation, an inconclusive symbolic
/// residue); those never fail a run.
struct CheckReport {
  std::string check;
  std::optional<bool> pass;
  nlohmann::json metrics = nlohmann::json::object();
  nlohmann::json worst_case = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  double tolerance = 0.0;

  bool passed() const { return pass.value_or(false); }
  bool failed() const { return pass.has_value() && !*pass; }
  bool informational() const { return !pass.has_value(); }
};

nlohmann::json to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& j);

/// "PASS", "FAIL" or "INFO".
std::string verdict_label(const CheckReport& r);

}  // namespace qpg
