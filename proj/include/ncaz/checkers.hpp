#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncaz/algebra.hpp"
#include "ncaz/check_result.hpp"
#include "ncaz/condexp.hpp"
#include "ncaz/martingale.hpp"

// Instance-level verification of the martingale concentration inequalities.
// Every checker re-verifies the hypotheses of the inequality on the instance
// before comparing: the left side is computed from the operators directly,
// the right side from the scalar formulas in bounds.hpp.
//
// Two-sided tails Prob(|x| >= lambda) are always computed directly from |x|;
// symmetry of the distribution is never assumed.

namespace ncaz {

// Each checker has a *_grid form that validates the instance, extracts the
// constants and re-verifies the hypotheses once, then emits one record per
// grid value (grid_index = position in the grid).

/// Prob(|x_n - x_0| >= lambda) <= 2 exp(-lambda^2 / (2 sum c_j^2)), c_j = ||dx_j||.
/// A sequence failing martingale validation yields its MART_VALID record.
CheckResult check_azuma(const MartingaleSequence& seq, double lambda, const Tolerance& tol = {});
std::vector<CheckResult> check_azuma_grid(const MartingaleSequence& seq,
                                          std::span<const double> lambdas,
                                          const Tolerance& tol = {});

/// elements[j-1] lives on factor j and must satisfy tau(a_j) = 0.
CheckResult check_hoeffding(const TensorFiltration& f, std::span<const HermitianElement> elements,
                            double t, const Tolerance& tol = {});
std::vector<CheckResult> check_hoeffding_grid(const TensorFiltration& f,
                                              std::span<const HermitianElement> elements,
                                              std::span<const double> ts,
                                              const Tolerance& tol = {});

/// Doob martingale of y; Prob(|y - tau(y) 1| >= t) <= 2 exp(-t^2 / (2 sum c_j^2)).
CheckResult check_mcdiarmid(const HermitianElement& y, const TensorFiltration& f, double t,
                            const Tolerance& tol = {});
std::vector<CheckResult> check_mcdiarmid_grid(const HermitianElement& y, const TensorFiltration& f,
                                              std::span<const double> ts,
                                              const Tolerance& tol = {});

/// Commutative case: factor j carries diag(values[j-1]) with mean 0 and
/// entries in [-1, 1]. The spectral tail is cross-checked against a direct
/// enumeration of the uniform product measure (aux "enumeration").
CheckResult check_scalar_chernoff(const TensorFiltration& f,
                                  const std::vector<std::vector<double>>& values, double t,
                                  const Tolerance& tol = {});
std::vector<CheckResult> check_scalar_chernoff_grid(const TensorFiltration& f,
                                                    const std::vector<std::vector<double>>& values,
                                                    std::span<const double> ts,
                                                    const Tolerance& tol = {});

/// One-sided statement Prob(x_n - x_0 >= lambda) <= supermartingale_bound.
/// Degenerate when the bound's denominator is <= 0.
CheckResult check_supermartingale_azuma(const MartingaleSequence& seq, double lambda,
                                        std::span<const double> a, std::span<const double> b,
                                        const Tolerance& tol = {});
std::vector<CheckResult> check_supermartingale_azuma_grid(const MartingaleSequence& seq,
                                                          std::span<const double> lambdas,
                                                          std::span<const double> a,
                                                          std::span<const double> b,
                                                          const Tolerance& tol = {});

/// Two-sided doubled form Prob(|x_n - x_0| >= lambda) <= 2 supermartingale_bound
/// for martingale instances, with constants valid for x and -x.
CheckResult check_supermartingale_two_sided(const MartingaleSequence& seq, double lambda,
                                            std::span<const double> a, std::span<const double> b,
                                            const Tolerance& tol = {});
std::vector<CheckResult> check_supermartingale_two_sided_grid(const MartingaleSequence& seq,
                                                              std::span<const double> lambdas,
                                                              std::span<const double> a,
                                                              std::span<const double> b,
                                                              const Tolerance& tol = {});

/// Prob(|x_n - x_0| >= lambda) <= martingale_variance_bound with sigma_j and M
/// extracted for both signs.
CheckResult check_thm32(const MartingaleSequence& seq, double lambda, std::span<const double> a,
                        const Tolerance& tol = {});
std::vector<CheckResult> check_thm32_grid(const MartingaleSequence& seq,
                                          std::span<const double> lambdas,
                                          std::span<const double> a, const Tolerance& tol = {});

/// tau(exp(lambda (x_n - x_0))) <= mgf_bound(lambda, K^2, M). lambda outside
/// (0, 3/M) gives a degenerate record with note "lambda_out_of_range".
CheckResult check_mgf(const MartingaleSequence& seq, double lambda, const Tolerance& tol = {});
std::vector<CheckResult> check_mgf_grid(const MartingaleSequence& seq,
                                        std::span<const double> lambdas,
                                        const Tolerance& tol = {});

/// One COR34_TAIL record per t, then one COR34_LP record per p.
std::vector<CheckResult> check_cor34(const MartingaleSequence& seq, std::span<const double> t_grid,
                                     std::span<const double> p_grid, const Tolerance& tol = {});

/// One-sided Prob(S_n >= lambda) with b_j^2 = tau(a_j^2), M = max ||a_j||.
CheckResult check_bernstein(const TensorFiltration& f, std::span<const HermitianElement> elements,
                            double lambda, const Tolerance& tol = {});
std::vector<CheckResult> check_bernstein_grid(const TensorFiltration& f,
                                              std::span<const HermitianElement> elements,
                                              std::span<const double> lambdas,
                                              const Tolerance& tol = {});

/// Per-step M_j = ||dx_j||, shifts a_j = (M_j - M)_+.
CheckResult check_cor36(const MartingaleSequence& seq, double lambda, double M,
                        const Tolerance& tol = {});
std::vector<CheckResult> check_cor36_grid(const MartingaleSequence& seq,
                                          std::span<const double> lambdas, double M,
                                          const Tolerance& tol = {});

}  // namespace ncaz
