#ifndef QF_REPORT_HPP
#define QF_REPORT_HPP

#include "qf/suites.hpp"

namespace qf {

// Machine-readable command report. Timings are deliberately excluded from the
// JSON form so that fixed-seed runs are byte-identical; the human renderer
// may append wall-clock times.
struct Report {
  std::string command;
  Json inputs = Json::object();
  std::vector<CheckResult> details;
  Json payload = Json::object();  // command-specific output (forms, censuses, ...)

  bool pass() const {
    for (const auto& c : details)
      if (!c.pass) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["status"] = pass() ? "pass" : "fail";
    Json det = Json::array();
    for (const auto& c : details) {
      Json e;
      e["check"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      if (!c.detail.empty()) e["detail"] = c.detail;
      det.push_back(e);
    }
    j["details"] = det;
    if (!payload.empty()) j["payload"] = payload;
    return j;
  }

  std::string human(double seconds = -1.0) const {
    std::string out = "== " + command + " ==\n";
    for (const auto& c : details) {
      out += std::string(c.pass ? "  [pass] " : "  [FAIL] ") + c.name;
      if (!c.detail.empty()) out += "  (" + c.detail + ")";
      out += "\n";
    }
    if (!payload.empty()) out += payload.dump(2) + "\n";
    out += std::string("status: ") + (pass() ? "pass" : "FAIL") + "\n";
    if (seconds >= 0) out += "elapsed: " + std::to_string(seconds) + "s\n";
    return out;
  }
};

}  // namespace qf

#endif
