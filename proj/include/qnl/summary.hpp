#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

namespace qnl::report {

struct Metric {
  std::string name;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline Metric make_metric(std::string name, double estimate, double stderr_, double target,
                          double tolerance) {
  Metric m{std::move(name), estimate, stderr_, target, tolerance, false};
  m.pass = std::abs(estimate - target) <= tolerance;
  return m;
}

struct Report {
  std::string experiment;
  nlohmann::json params;
  std::vector<Metric> metrics;

  bool all_pass() const {
    for (const auto& m : metrics)
      if (!m.pass) return false;
    return true;
  }
};

nlohmann::json to_json(const Report& r);
void write_report(const Report& r, const std::string& path);

// throws std::runtime_error when a summary does not follow the schema
void validate_report_json(const nlohmann::json& j);

}  // namespace qnl::report
