#pragma once

#include <string>
#include <vector>

namespace dfield {

struct VerifyConfig {
  unsigned long long seed = 1;
  int instances = 100;  // random instances per identity and flux check
  double tolerance = 1e-12;               // relative, for exact identities
  double conservation_tolerance = 1e-8;   // interior residuals of conservation laws
  double stationarity_tolerance = 1e-8;   // |dS/dt| on shell
  double off_shell_threshold = 1e-4;      // some |dS/dt| must exceed it off shell
  std::vector<std::string> suites;        // empty runs every suite
  int threads = 0;                        // 0 picks the hardware concurrency
  bool inject_sign_bug = false;           // test mode: the cup Leibniz check flips a sign
};

// Upper checks pass when the largest residual is at most the tolerance; lower
// checks pass when the smallest witness exceeds it.
struct CheckResult {
  std::string suite;
  std::string name;
  int instances;
  double value;
  double tolerance;
  bool lower;
  bool passed;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;
  bool passed() const;
  std::vector<std::string> failures() const;
};

// cochain, covariant, gauge, stationarity, conservation, flux, doubling.
const std::vector<std::string>& verify_suites();

// Throws ConfigurationError for unknown suites.
VerifyReport run_verify(const VerifyConfig& config);

// JSON lines: a header with the configuration, one line per check in suite order,
// and a summary.
std::string report_jsonl(const VerifyReport& report);

}  // namespace dfield
