#pragma once

// Batch jobs: config parsing, pipeline execution and the JSON report.

#include "shifttower/construction.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace shifttower {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitCheckFailed = 3,
  kExitCap = 4,
};

enum class Command { Verify, Commutant, Entropy, Oracle, All };

Command parse_command(const std::string& s);
std::string to_string(Command c);

struct JobConfig {
  RawSpec spec;
  int depth = 1;
  std::optional<int> window;      // default depth + 1
  std::optional<int> truncation;  // default K*(depth)
  std::optional<int> relations_truncation;  // default: truncation
  unsigned seed = 1;
  std::optional<int> tower_depth;  // default: largest d ≤ 2 with n^d ≤ tower_cap; 0 disables
  long long tower_cap = 64;
  int shift_window = 6;
  int random_products = 100;
  long long window_cap = 128;
  bool oracle_enabled = true;
  int oracle_truncation = 0;  // 0: largest K with n^K ≤ dense_cap
  long long dense_cap = 256;

  int effective_window() const { return window.value_or(depth + 1); }
  int effective_truncation() const { return truncation.value_or(default_truncation(depth)); }
};

/// Parses and validates a config document; throws SpecError on schema errors.
JobConfig parse_config(const nlohmann::json& doc);
nlohmann::json config_to_json(const JobConfig& cfg);

/// "e/f" with e/f reduced.
std::pair<long long, long long> parse_fraction(const std::string& s);
std::string fraction_string(const Rational& q);

struct JobResult {
  nlohmann::json report;
  int exit_code = kExitPass;
};

/// Runs the sections selected by `command`; never throws for spec, cap or
/// check failures (they become report sections and exit codes).
JobResult run_job(const JobConfig& cfg, Command command);

/// The report without its timing section (the determinism contract).
nlohmann::json strip_timing(const nlohmann::json& report);

/// One-screen human-readable summary.
std::string summarize(const nlohmann::json& report);

}  // namespace shifttower
