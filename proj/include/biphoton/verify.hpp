#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biphoton {

struct VerifyOptions {
  // Forces every grid to n points with auto-refinement off (testing only).
  std::optional<std::size_t> grid_n;
  unsigned threads = 1;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::optional<double> metric;  // worst observed value; empty if the check threw
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::optional<std::size_t> grid_n;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Null when every check passed.
  const CheckResult* first_failure() const;
  /// Deterministic JSON; identical inputs give byte-identical text.
  std::string to_json() const;
};

/// Check names in execution order.
const std::vector<std::string>& verification_check_names();

/// Runs one named check. Errors raised inside a check become a failed result.
CheckResult run_check(std::string_view name, const VerifyOptions& options = {});

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace biphoton
