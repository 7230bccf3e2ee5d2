#pragma once

// Command layer shared by the C API and (through it) the CLI: resource
// reports, decomposition reports, verification suites and the paper-value
// regression table.  Reports are deterministic for a fixed config and seed;
// wall-clock timings live in their own section.

#include "specio.hpp"

namespace ssr {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit/status codes, stable across versions.
enum StatusCode : int {
  kStatusOk = 0,
  kStatusValidation = 1,
  kStatusCheckFailed = 2,
  kStatusParse = 3,
};

struct RunConfig {
  std::string command;       // resources | decompose | verify | reproduce-paper
  std::string group;         // catalog name or spec path (optional)
  std::string state;         // builder shorthand or spec path
  std::string charges_path;  // charges spec path (optional)
  std::string suite;         // theorem1 | theorem2 | theorem3 | identities | appendix | all
  std::uint64_t seed = 1;
  int trials = 0;            // 0 = per-suite default
  std::optional<double> tol; // overrides suite check tolerances (not reproduce-paper)
  bool achievability = false;  // theorem2/theorem3: run only the equality trials
};

struct RunResult {
  Json report;
  int status = kStatusOk;
};

RunResult run_command(const RunConfig& config);

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& config);

Json check_to_json(const CheckResult& check);

// Verification suites (also driven directly by the acceptance tests).
std::vector<CheckResult> suite_theorem1(const std::vector<std::string>& groups,
                                        int trials_per_group, std::uint64_t seed);
std::vector<CheckResult> suite_theorem2(const std::vector<std::string>& groups, int bound_trials,
                                        int achievability_trials, std::uint64_t seed);
std::vector<CheckResult> suite_theorem3(const std::vector<std::string>& groups, int pair_trials,
                                        std::uint64_t seed);
std::vector<CheckResult> suite_identities(const std::vector<std::string>& groups,
                                          int trials_per_group, std::uint64_t seed);
std::vector<CheckResult> suite_appendix(const std::vector<std::string>& groups,
                                        int symmetric_trials, std::uint64_t seed);
// Every paper-quoted value, with pinned 1e-9 tolerances.
std::vector<CheckResult> suite_paper_values();

}  // namespace ssr
