#include "qnl/summary.hpp"

#include <fstream>
#include <stdexcept>

namespace qnl::report {

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["experiment"] = r.experiment;
  j["params"] = r.params;
  j["metrics"] = nlohmann::json::array();
  for (const auto& m : r.metrics) {
    j["metrics"].push_back({{"name", m.name},
                            {"estimate", m.estimate},
                            {"stderr", m.stderr_},
                            {"target", m.target},
                            {"tolerance", m.tolerance},
                            {"pass", m.pass}});
  }
  j["pass"] = r.all_pass();
  return j;
}

void write_report(const Report& r, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_report: cannot open " + path);
  os << to_json(r).dump(2) << "\n";
}

void validate_report_json(const nlohmann::json& j) {
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("summary schema: ") + what);
  };
  require(j.contains("schema") && j["schema"].is_number_integer() && j["schema"] == 1,
          "schema must be 1");
  require(j.contains("experiment") && j["experiment"].is_string(), "experiment name missing");
  require(j.contains("params") && j["params"].is_object(), "params object missing");
  require(j.contains("metrics") && j["metrics"].is_array(), "metrics array missing");
  require(j.contains("pass") && j["pass"].is_boolean(), "pass flag missing");
  for (const auto& m : j["metrics"]) {
    require(m.contains("name") && m["name"].is_string(), "metric name missing");
    for (const char* key : {"estimate", "stderr", "target", "tolerance"})
      require(m.contains(key) && m[key].is_number(), "metric field missing");
    require(m.contains("pass") && m["pass"].is_boolean(), "metric pass missing");
  }
}

}  // namespace qnl::report
