#pragma once

#include <cstddef>
#include <span>

// Closed-form tail, moment and norm bounds for noncommutative martingales.
// All functions are pure; none clamps its value to [0, 1].

namespace ncaz::bounds {

/// h(s) = 2 sum_{k>=2} s^{k-2}/k! = 2(e^s - 1 - s)/s^2, h(0) = 1.
double h_eval(double s);

/// 2 exp(-lambda^2 / (2 sum c_j^2)).
double azuma_bound(double lambda, std::span<const double> c);

/// Same closed form as azuma_bound, for sums of order-independent elements.
double hoeffding_bound(double t, std::span<const double> c);

/// 2 exp(-t^2 / (2n)).
double scalar_chernoff_bound(double t, std::size_t n);

/// sum_j (sigma_j^2 + D b_j + a_j^2) + M lambda / 3; the bound below is
/// degenerate when this is <= 0.
double supermartingale_denominator(double lambda, std::span<const double> sigma_sq,
                                   std::span<const double> a, std::span<const double> b, double M,
                                   double D);

/// exp(-lambda^2 / (2 (sum (sigma_j^2 + D b_j + a_j^2) + M lambda / 3))),
/// one-sided. Returns NaN for a nonpositive denominator.
double supermartingale_bound(double lambda, std::span<const double> sigma_sq,
                             std::span<const double> a, std::span<const double> b, double M,
                             double D);

/// 2 * supermartingale_bound: the two-sided form.
double supermartingale_two_sided_bound(double lambda, std::span<const double> sigma_sq,
                                       std::span<const double> a, std::span<const double> b,
                                       double M, double D);

/// 2 exp(-lambda^2 / (2 (sum (sigma_j^2 + a_j^2) + M lambda / 3))).
double martingale_variance_bound(double lambda, std::span<const double> sigma_sq,
                                 std::span<const double> a, double M);

/// exp(lambda^2 K^2 / (2 (1 - lambda M / 3))) for 0 < lambda < 3/M; RangeError otherwise.
double mgf_bound(double lambda, double K_sq, double M);

/// 2 exp(-3 t^2 / (6 sum sigma_j^2 + 2 t M)).
double cor34_tail_bound(double t, std::span<const double> sigma_sq, double M);

/// sqrt(3p) K + sqrt(8) p Mmax for p >= 2.
double lp_norm_bound(double p, double K, double Mmax);

/// exp(-lambda^2 / (2 b^2 + (2/3) lambda M)), one-sided; 1 at lambda = 0.
double bernstein_bound(double lambda, double b_total_sq, double M);

/// a_j = 0 if M_j <= M, else M_j - M.
void cor36_shifts(std::span<const double> M_steps, double M, std::span<double> a_out);

/// martingale_variance_bound(lambda, sigma^2, a, M) with a from cor36_shifts.
double cor36_bound(double lambda, std::span<const double> sigma_sq,
                   std::span<const double> M_steps, double M);

}  // namespace ncaz::bounds
