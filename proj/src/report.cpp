#include "qsatake/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace qsatake {

void Report::add(const std::string& name, bool pass,
                 const std::string& witness) {
  checks.push_back({name, pass, witness});
}

int Report::passed() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(),
                    [](const CheckResult& c) { return c.pass; }));
}

int Report::failed() const {
  return static_cast<int>(checks.size()) - passed();
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["version"] = tool_version();
  j["seed"] = seed;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["status"] = c.pass ? "pass" : "fail";
    if (!c.witness.empty()) e["witness"] = c.witness;
    j["checks"].push_back(e);
  }
  j["summary"] = {{"passed", passed()},
                  {"failed", failed()},
                  {"total", checks.size()}};
  return j.dump(2);
}

std::string Report::to_table() const {
  std::ostringstream out;
  size_t w = 4;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  out << "suite: " << suite << " (version " << tool_version()
      << ", seed " << seed << ")\n";
  for (const auto& c : checks) {
    out << "  " << c.name << std::string(w - c.name.size() + 2, ' ')
        << (c.pass ? "pass" : "FAIL");
    if (!c.witness.empty()) out << "  [" << c.witness << "]";
    out << "\n";
  }
  out << "  " << passed() << "/" << checks.size() << " checks passed\n";
  return out.str();
}

}  // namespace qsatake
