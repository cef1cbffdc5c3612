#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fbdual/conservation.hpp"
#include "fbdual/report.hpp"
#include "fbdual/symdiff.hpp"

namespace fbd::runner {

/// Suites in dependency order.
const std::vector<std::string>& suite_names();

struct RunConfig {
  std::string mass = "1";  // positive rational
  double tol_exact = 0.0;
  double tol_numeric = 1e-10;
  double tol_drift = 1e-8;
  double tol_drift_derivative = 1e-6;
  double tol_norm = 1e-12;
  conservation::Grid grid;
  double sigma = 0.5;
  /// Search the candidate tuples instead of using `conv` (`conv = auto`).
  bool conv_auto = false;
  symdiff::Conventions conv;
  /// fermi, bose or both.
  std::string rep = "both";
  /// Test fixture: appends a suite with one failing check.
  bool fixture_fail = false;

  /// key = value lines; '#' starts a comment. Throws ConfigError.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  /// Throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Effective settings, sorted by key.
  std::map<std::string, std::string> entries() const;
  double mass_value() const;
};

struct SuiteReport {
  Suite suite;
  bool passed() const { return suite.passed(); }
};

/// Runs the named suites (or all when `names` holds "all") in dependency
/// order. Unknown names raise ConfigError.
std::vector<SuiteReport> run(const RunConfig& cfg, const std::vector<std::string>& names);

std::string to_json(const RunConfig& cfg, const std::vector<SuiteReport>& reports);
std::string to_markdown(const RunConfig& cfg, const std::vector<SuiteReport>& reports);

constexpr const char* kVersion = "1.0.0";

}  // namespace fbd::runner
