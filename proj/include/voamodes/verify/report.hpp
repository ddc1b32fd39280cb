#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "voamodes/verify/suites.hpp"

namespace voamodes::verify {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaId = "voa-modes/verify-report";
inline constexpr const char* kReportSchemaVersion = "1.0.0";

inline Json config_json(const RunConfig& c) {
  Json charges = Json::array();
  for (const auto& q : c.charges) charges.push_back(to_string(q));
  Json suites = Json::array();
  for (const auto& s : c.selected_suites()) suites.push_back(s);
  return Json{{"N", c.N},
              {"L_max", c.L_max},
              {"cap", c.effective_cap()},
              {"charges", charges},
              {"p_window", Json::array({c.p_lo, c.p_hi})},
              {"max_v_weight", c.max_v_weight},
              {"suites", suites},
              {"seed", c.seed},
              {"workers", c.workers}};
}

inline Json suite_json(const SuiteReport& s, bool timing) {
  Json j{{"name", s.name},
         {"cases_run", s.tally.run},
         {"cases_passed", s.tally.passed},
         {"pass", s.passed()}};
  if (s.tally.first_failure) {
    const auto& f = *s.tally.first_failure;
    j["first_failure"] = Json{{"where", f.where}, {"lhs", f.lhs}, {"rhs", f.rhs}};
  } else {
    j["first_failure"] = nullptr;
  }
  if (s.error) j["error"] = *s.error;
  if (timing) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s.seconds;
    j["wall_seconds"] = std::stod(os.str());
  }
  return j;
}

inline Json report_json(const RunConfig& c, const RunResult& r, bool timing) {
  Json suites = Json::array();
  for (const auto& s : r.suites) suites.push_back(suite_json(s, timing));
  return Json{{"schema", kReportSchemaId},
              {"schema_version", kReportSchemaVersion},
              {"config", config_json(c)},
              {"suites", suites},
              {"pass", r.passed()}};
}

}  // namespace voamodes::verify
