#include "ncaz/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ncaz/error.hpp"

namespace ncaz::bounds {

namespace {

double sum_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ParameterError(std::string(name) + " must be positive");
}

void require_same_length(std::span<const double> a, std::span<const double> b, const char* name) {
  if (a.size() != b.size()) {
    throw ParameterError(std::string(name) + " must have one entry per step (" +
                         std::to_string(a.size()) + "), got " + std::to_string(b.size()));
  }
}

}  // namespace

double h_eval(double s) {
  if (std::abs(s) < 1.0) {
    // sum_{m>=0} 2 s^m / (m+2)!
    double term = 1.0;
    double total = 1.0;
    for (int m = 1; m < 40; ++m) {
      term *= s / static_cast<double>(m + 2);
      total += term;
      if (std::abs(term) < 1e-17 * std::abs(total)) break;
    }
    return total;
  }
  return 2.0 * (std::expm1(s) - s) / (s * s);
}

double azuma_bound(double lambda, std::span<const double> c) {
  require_positive(lambda, "lambda");
  if (c.empty()) throw ParameterError("Lipschitz constants must be non-empty");
  for (double cj : c) require_positive(cj, "each c_j");
  return 2.0 * std::exp(-lambda * lambda / (2.0 * sum_sq(c)));
}

double hoeffding_bound(double t, std::span<const double> c) { return azuma_bound(t, c); }

double scalar_chernoff_bound(double t, std::size_t n) {
  if (n == 0) throw ParameterError("Chernoff bound needs n >= 1");
  if (t < 0.0) throw ParameterError("t must be nonnegative");
  return 2.0 * std::exp(-t * t / (2.0 * static_cast<double>(n)));
}

double supermartingale_denominator(double lambda, std::span<const double> sigma_sq,
                                   std::span<const double> a, std::span<const double> b, double M,
                                   double D) {
  require_same_length(sigma_sq, a, "a");
  require_same_length(sigma_sq, b, "b");
  double total = 0.0;
  for (std::size_t j = 0; j < sigma_sq.size(); ++j) {
    total += sigma_sq[j] + D * b[j] + a[j] * a[j];
  }
  return total + M * lambda / 3.0;
}

double supermartingale_bound(double lambda, std::span<const double> sigma_sq,
                             std::span<const double> a, std::span<const double> b, double M,
                             double D) {
  require_positive(lambda, "lambda");
  require_positive(M, "M");
  const double den = supermartingale_denominator(lambda, sigma_sq, a, b, M, D);
  if (!(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::exp(-lambda * lambda / (2.0 * den));
}

double supermartingale_two_sided_bound(double lambda, std::span<const double> sigma_sq,
                                       std::span<const double> a, std::span<const double> b,
                                       double M, double D) {
  return 2.0 * supermartingale_bound(lambda, sigma_sq, a, b, M, D);
}

double martingale_variance_bound(double lambda, std::span<const double> sigma_sq,
                                 std::span<const double> a, double M) {
  require_positive(lambda, "lambda");
  require_positive(M, "M");
  require_same_length(sigma_sq, a, "a");
  const double den = sum(sigma_sq) + sum_sq(a) + M * lambda / 3.0;
  return 2.0 * std::exp(-lambda * lambda / (2.0 * den));
}

double mgf_bound(double lambda, double K_sq, double M) {
  require_positive(M, "M");
  if (K_sq < 0.0) throw ParameterError("K^2 must be nonnegative");
  if (!(lambda > 0.0) || !(lambda < 3.0 / M)) {
    throw RangeError("MGF bound holds for 0 < lambda < 3/M = " + std::to_string(3.0 / M) +
                     ", got " + std::to_string(lambda));
  }
  return std::exp(lambda * lambda * K_sq / (2.0 * (1.0 - lambda * M / 3.0)));
}

double cor34_tail_bound(double t, std::span<const double> sigma_sq, double M) {
  require_positive(t, "t");
  require_positive(M, "M");
  return 2.0 * std::exp(-3.0 * t * t / (6.0 * sum(sigma_sq) + 2.0 * t * M));
}

double lp_norm_bound(double p, double K, double Mmax) {
  if (!(p >= 2.0) || std::isinf(p)) {
    throw RangeError("L_p bound needs 2 <= p < inf, got " + std::to_string(p));
  }
  if (K < 0.0 || Mmax < 0.0) throw ParameterError("K and Mmax must be nonnegative");
  return std::sqrt(3.0 * p) * K + std::sqrt(8.0) * p * Mmax;
}

double bernstein_bound(double lambda, double b_total_sq, double M) {
  if (lambda < 0.0) throw ParameterError("lambda must be nonnegative");
  require_positive(M, "M");
  if (b_total_sq < 0.0) throw ParameterError("b^2 must be nonnegative");
  if (lambda == 0.0) return 1.0;
  return std::exp(-lambda * lambda / (2.0 * b_total_sq + (2.0 / 3.0) * lambda * M));
}

void cor36_shifts(std::span<const double> M_steps, double M, std::span<double> a_out) {
  if (a_out.size() != M_steps.size()) throw ParameterError("shift output has wrong length");
  for (std::size_t j = 0; j < M_steps.size(); ++j) {
    a_out[j] = M_steps[j] <= M ? 0.0 : M_steps[j] - M;
  }
}

double cor36_bound(double lambda, std::span<const double> sigma_sq,
                   std::span<const double> M_steps, double M) {
  require_same_length(sigma_sq, M_steps, "M_steps");
  std::vector<double> a(M_steps.size());
  cor36_shifts(M_steps, M, a);
  return martingale_variance_bound(lambda, sigma_sq, a, M);
}

}  // namespace ncaz::bounds
