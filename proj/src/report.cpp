#include "qpg/report.hpp"

namespace qpg {

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["pass"] = r.pass ? nlohmann::json(*r.pass) : nlohmann::json(nullptr);
  j["metrics"] = r.metrics;
  j["worst_case"] = r.worst_case;
  if (r.seed) j["seed"] = *r.seed;
  j["tolerance"] = r.tolerance;
  return j;
}

CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  if (!j.at("pass").is_null()) r.pass = j.at("pass").get<bool>();
  r.metrics = j.value("metrics", nlohmann::json::object());
  r.worst_case = j.value("worst_case", nlohmann::json::object());
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  r.tolerance = j.at("tolerance").get<double>();
  return r;
}

std::string verdict_label(const CheckReport& r) {
  if (!r.pass) return "INFO";
  return *r.pass ? "PASS" : "FAIL";
}

}  // namespace qpg
