#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncaz/check_result.hpp"

namespace ncaz {

enum class SuiteKind {
  Azuma,
  Hoeffding,
  McDiarmid,
  Chernoff,
  Super,
  Thm32,
  Mgf,
  Cor34,
  Bernstein,
  Cor36,
  Foundations,
};

std::string_view to_string(SuiteKind kind);
/// Accepts the CLI names (azuma, hoeffding, ..., foundations); "all" is handled by the caller.
std::optional<SuiteKind> suite_from_string(std::string_view name);
std::vector<SuiteKind> all_suites();

struct SuiteConfig {
  std::vector<SuiteKind> suites{all_suites()};
  std::size_t trials = 200;
  std::vector<std::vector<std::size_t>> dim_choices{
      {2, 2}, {2, 2, 2}, {3, 2}, {2, 3, 2}, {4, 2}, {2, 2, 2, 2}, {4, 4, 4}, {2, 2, 2, 2, 2, 2}};
  std::pair<std::size_t, std::size_t> step_range{1, 6};
  // lambda (and t) values; 1e-6 is the lambda -> 0+ anchor
  std::vector<double> lambda_grid{1e-6, 0.5, 1.0, 1.5, 2.0, 3.0};
  std::vector<double> p_grid{2.0, 3.0, 4.0, 6.0};
  // MGF lambdas as fractions of 3/M
  std::vector<double> mgf_fractions{0.1, 0.5, 0.9};
  std::vector<double> drift_scales{0.0, 0.5, 1.0};
  // b_j values swept by the supermartingale suite (same b for every step)
  std::vector<double> super_b_grid{0.0, 0.25};
  std::size_t order_samples = 10;
  std::uint64_t seed = 0;
  Tolerance tolerance{};
  std::size_t threads = 1;
  bool record_timing = false;
};

/// Throws ParameterError on an invalid configuration.
void validate_config(const SuiteConfig& cfg);

/// Runs every configured suite. Each (suite, trial) pair draws from its own
/// counter-based stream keyed by (seed, suite, trial), so the returned records
/// do not depend on the thread count. Records are ordered by
/// (theorem, trial, grid index). Failures are returned as data, never thrown.
std::vector<CheckResult> run_suite(const SuiteConfig& cfg);

/// Records for a single (suite, trial) pair, as run_suite generates them.
std::vector<CheckResult> run_trial(const SuiteConfig& cfg, SuiteKind kind, std::size_t trial);

struct SuiteSummary {
  std::size_t total = 0;
  std::size_t holds = 0;
  std::size_t violations = 0;
  std::size_t degenerate = 0;
  std::map<std::string, double> max_ratio_per_theorem;
  std::map<std::string, std::size_t> count_per_theorem;
  std::map<std::string, std::size_t> degenerate_per_theorem;
};

SuiteSummary summarize(const std::vector<CheckResult>& results);

}  // namespace ncaz
