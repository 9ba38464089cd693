#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace shiftwave::tools {

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  // Negative control: passes when value exceeds threshold.
  bool expected_fail = false;
  std::string detail;
  std::string comparison = "<=";  // how value is held against threshold
};

struct CheckReport {
  std::vector<CheckResult> results;
  double seconds = 0.0;
  std::uint64_t seed = 0;

  bool all_pass() const;
};

const std::vector<std::string>& check_suites();  // without "all"

// suite: one of check_suites() or "all". overlap adds the Bedrosian
// negative controls.
CheckReport run_checks(const std::string& suite, bool overlap, std::uint64_t seed);

void write_check_report_text(std::ostream& os, const CheckReport& r);
void write_check_report_json(std::ostream& os, const CheckReport& r);

}  // namespace shiftwave::tools
