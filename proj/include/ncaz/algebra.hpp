#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

#include "ncaz/check_result.hpp"

namespace ncaz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Self-adjoint element of the d x d complex matrix algebra. The stored
/// matrix is always (z + z^dagger) / 2 of whatever was passed in.
class HermitianElement {
 public:
  explicit HermitianElement(const Matrix& entries);

  static HermitianElement zero(std::size_t dim);
  static HermitianElement identity(std::size_t dim);
  static HermitianElement scalar(std::size_t dim, double value);
  static HermitianElement diagonal(std::span<const double> values);
  static HermitianElement diagonal(std::initializer_list<double> values);

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  [[nodiscard]] const Matrix& matrix() const { return m_; }

  HermitianElement operator-() const;
  HermitianElement& operator+=(const HermitianElement& other);
  HermitianElement& operator-=(const HermitianElement& other);
  HermitianElement& operator*=(double s);

  friend HermitianElement operator+(HermitianElement a, const HermitianElement& b) { return a += b; }
  friend HermitianElement operator-(HermitianElement a, const HermitianElement& b) { return a -= b; }
  friend HermitianElement operator*(HermitianElement a, double s) { return a *= s; }
  friend HermitianElement operator*(double s, HermitianElement a) { return a *= s; }

 private:
  Matrix m_;
};

Matrix symmetrize(const Matrix& z);

/// a x a, self-adjoint whenever a and x are.
HermitianElement sandwich(const HermitianElement& a, const HermitianElement& x);

/// Jordan-symmetrized square x^2 (exactly self-adjoint after symmetrization).
HermitianElement square(const HermitianElement& x);

/// Eigen-decomposition with rank-1 eigenprojections v_i v_i^dagger.
struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // column i pairs with eigenvalues[i]

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
  [[nodiscard]] Matrix projection(std::size_t i) const;
  [[nodiscard]] Matrix reconstruct() const;
  [[nodiscard]] double min() const { return eigenvalues(0); }
  [[nodiscard]] double max() const { return eigenvalues(eigenvalues.size() - 1); }
  [[nodiscard]] double spectral_radius() const;
};

SpectralDecomposition spectral_decompose(const HermitianElement& x);

using RealFunction = std::function<double(double)>;

/// f(x) = sum_i f(lambda_i) P_i. Throws DomainError if f is not finite at
/// some eigenvalue.
HermitianElement apply_function(const SpectralDecomposition& spec, const RealFunction& f);
HermitianElement apply_function(const HermitianElement& x, const RealFunction& f);

HermitianElement exp_element(const HermitianElement& x);

/// Normalized trace tr(x)/d.
double trace_state(const HermitianElement& x);
Complex trace_state(const Matrix& z);

/// tau(chi_[t, inf)(x)). Eigenvalues within 1e-10 * max(1, rho(x)) below t count.
double tail_probability(const SpectralDecomposition& spec, double t);
double tail_probability(const HermitianElement& x, double t);

HermitianElement abs_element(const HermitianElement& x);

double operator_norm(const HermitianElement& x);
double min_eigenvalue(const HermitianElement& x);
double max_eigenvalue(const HermitianElement& x);

/// (tau(|x|^p))^(1/p); p = +inf gives the operator norm. p < 1 throws ParameterError.
double schatten_norm(const HermitianElement& x, double p);

/// x <= y up to tol * max(1, ||x||, ||y||).
bool leq_order(const HermitianElement& x, const HermitianElement& y, double tol);

/// Amount by which x <= y fails: max(0, -lambda_min(y - x)).
double order_defect(const HermitianElement& x, const HermitianElement& y);

/// Both Golden-Thompson forms tau(e^{y1+y2}) <= tau(e^{y1/2} e^{y2} e^{y1/2})
/// and tau(e^{y1+y2}) <= tau(e^{y1} e^{y2}). rhs is the smaller of the two.
/// Commuting pairs must additionally attain equality within 1e-10.
CheckResult check_golden_thompson(const HermitianElement& y1, const HermitianElement& y2,
                                  const Tolerance& tol = {});

/// tau(chi_[t,inf)(x)) <= e^{-t} tau(e^x).
CheckResult check_exp_chebyshev(const HermitianElement& x, double t, const Tolerance& tol = {});

/// Exact value of int_0^inf p t^{p-1} tau(chi_[t,inf)(x)) dt for x >= 0, summed
/// over the jumps of the tail function.
double tail_integral(const HermitianElement& x, double p);

/// Compares tail_integral(x, p) with tau(x^p) (relative 1e-9).
CheckResult check_lp_integral_identity(const HermitianElement& x, double p);

}  // namespace ncaz
