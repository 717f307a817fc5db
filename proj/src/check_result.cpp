#include "ncaz/check_result.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace ncaz {

namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 17> kNames{{
    {TheoremId::GT, "GT"},
    {TheoremId::CHEB, "CHEB"},
    {TheoremId::LPID, "LPID"},
    {TheoremId::AZUMA, "AZUMA"},
    {TheoremId::HOEFFDING, "HOEFFDING"},
    {TheoremId::MCDIARMID, "MCDIARMID"},
    {TheoremId::CHERNOFF, "CHERNOFF"},
    {TheoremId::SUPER_AZUMA, "SUPER_AZUMA"},
    {TheoremId::THM32, "THM32"},
    {TheoremId::MGF, "MGF"},
    {TheoremId::COR34_TAIL, "COR34_TAIL"},
    {TheoremId::COR34_LP, "COR34_LP"},
    {TheoremId::BERNSTEIN, "BERNSTEIN"},
    {TheoremId::COR36, "COR36"},
    {TheoremId::ORDER_INDEP, "ORDER_INDEP"},
    {TheoremId::CE_AXIOMS, "CE_AXIOMS"},
    {TheoremId::MART_VALID, "MART_VALID"},
}};

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& [key, name] : kNames) {
    if (key == id) return name;
  }
  return "UNKNOWN";
}

std::optional<TheoremId> theorem_from_string(std::string_view name) {
  for (const auto& [key, n] : kNames) {
    if (n == name) return key;
  }
  return std::nullopt;
}

double safe_ratio(double lhs, double rhs) {
  if (rhs == 0.0) {
    if (lhs == 0.0) return 0.0;
    return lhs > 0.0 ? INFINITY : -INFINITY;
  }
  return lhs / rhs;
}

void finalize_upper_bound(CheckResult& r, const Tolerance& tol) {
  if (r.degenerate || std::isnan(r.rhs) || std::isnan(r.lhs)) {
    r.degenerate = true;
    r.holds = false;
    r.ratio = NAN;
    return;
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  r.holds = tol.accepts(r.lhs, r.rhs);
}

void finalize_identity(CheckResult& r, double rel_tol, double abs_tol) {
  r.ratio = safe_ratio(r.lhs, r.rhs);
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.holds = std::abs(r.lhs - r.rhs) <= rel_tol * scale + abs_tol;
}

}  // namespace ncaz
