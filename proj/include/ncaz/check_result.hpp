#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncaz {

enum class TheoremId {
  GT,
  CHEB,
  LPID,
  AZUMA,
  HOEFFDING,
  MCDIARMID,
  CHERNOFF,
  SUPER_AZUMA,
  THM32,
  MGF,
  COR34_TAIL,
  COR34_LP,
  BERNSTEIN,
  COR36,
  ORDER_INDEP,
  CE_AXIOMS,
  MART_VALID,
};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(std::string_view name);

/// Hypothesis constants extracted from an instance. Vectors are indexed by
/// step j = 1..n (stored at j-1). Fields a theorem does not use stay empty/0.
struct BoundParams {
  std::vector<double> c;
  std::vector<double> sigma_sq;
  std::vector<double> a;
  std::vector<double> b;
  double M = 0.0;
  double D = 0.0;
  double K_sq = 0.0;
  double b_total_sq = 0.0;
  // max eigenvalue of x_j - x_0, j = 1..n
  std::vector<double> level_max;
  // per-step upper constants M_j (max eigenvalue of dx_j, or its norm)
  std::vector<double> step_max;

  bool operator==(const BoundParams&) const = default;
};

/// Acceptance rule for "lhs <= rhs": lhs <= rhs * (1 + rel) + abs.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  [[nodiscard]] bool accepts(double lhs, double rhs) const {
    return lhs <= rhs * (1.0 + rel) + abs;
  }
};

struct CheckResult {
  TheoremId theorem = TheoremId::MART_VALID;
  std::string label;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::size_t grid_index = 0;
  std::vector<std::size_t> dims;
  std::size_t n_steps = 0;
  // the grid value this record was evaluated at (lambda, t or p)
  double param = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
  bool degenerate = false;
  std::string note;
  BoundParams params;
  double residual = 0.0;
  std::map<std::string, double> aux;
  // wall-clock time of the producing trial; only set when timing is requested
  std::optional<double> duration_ms;

  bool operator==(const CheckResult&) const = default;
};

double safe_ratio(double lhs, double rhs);

/// Fills ratio/holds for an upper-bound comparison. Degenerate results never hold
/// and never count as violations.
void finalize_upper_bound(CheckResult& r, const Tolerance& tol);

/// Fills ratio/holds for an identity check |lhs - rhs| <= rel * max(|lhs|, |rhs|) + abs.
void finalize_identity(CheckResult& r, double rel_tol, double abs_tol = 1e-12);

/// A non-degenerate record that fails its comparison.
inline bool is_violation(const CheckResult& r) { return !r.degenerate && !r.holds; }

}  // namespace ncaz
