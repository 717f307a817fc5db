#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ncaz/check_result.hpp"

namespace ncaz {

/// Named arguments of a closed-form bound: scalars (lambda, t, M, ...) and
/// per-step lists (c, sigma2, a, b, Mj).
struct BoundArgs {
  std::map<std::string, double> scalars;
  std::map<std::string, std::vector<double>> lists;
};

/// Names accepted by evaluate_bound, in display order.
const std::vector<std::string>& bound_names();

/// Evaluates the named bound. ParameterError for a missing or inconsistent
/// argument, RangeError when the bound is undefined at the given point.
double evaluate_bound(const std::string& name, const BoundArgs& args);

/// 1 if any record is a non-degenerate violation, else 0.
int verify_exit_code(const std::vector<CheckResult>& records);

/// Entry point of the ncaz tool: verify | bound | sweep.
/// Exit codes: 0 success, 1 a verified inequality failed, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncaz
