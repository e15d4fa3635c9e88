#pragma once

// Structured pass/fail reporting for the verification suites. Each check
// carries a stable name and, on failure, a witness string describing the
// offending values.

#include <cstdint>
#include <string>
#include <vector>

namespace qsatake {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass unless informative
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  void add(const std::string& name, bool pass, const std::string& witness = "");
  // Convenience: compare printable values, recording them on mismatch.
  template <class T>
  void expect_eq(const std::string& name, const T& got, const T& want) {
    if (got == want)
      add(name, true);
    else
      add(name, false, "got " + got.to_string() + ", want " + want.to_string());
  }

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }

  // Stable JSON document (suite, seed, checks, summary, version).
  std::string to_json() const;
  // Fixed-width human table, one row per check.
  std::string to_table() const;
};

inline const char* tool_version() { return "1.0.0"; }

}  // namespace qsatake
