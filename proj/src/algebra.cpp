#include "ncaz/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ncaz/error.hpp"

namespace ncaz {

namespace {

constexpr double kBoundaryTol = 1e-10;

double boundary_tol(const SpectralDecomposition& spec) {
  return kBoundaryTol * std::max(1.0, spec.spectral_radius());
}

void require_same_dim(const HermitianElement& a, const HermitianElement& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

}  // namespace

Matrix symmetrize(const Matrix& z) { return (z + z.adjoint()) * 0.5; }

HermitianElement::HermitianElement(const Matrix& entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw DimensionError("Hermitian element needs a non-empty square matrix, got " +
                         std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }
  m_ = symmetrize(entries);
}

HermitianElement HermitianElement::zero(std::size_t dim) {
  return HermitianElement(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

HermitianElement HermitianElement::identity(std::size_t dim) {
  return HermitianElement(
      Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

HermitianElement HermitianElement::scalar(std::size_t dim, double value) {
  return identity(dim) * value;
}

HermitianElement HermitianElement::diagonal(std::span<const double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                          static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  }
  return HermitianElement(m);
}

HermitianElement HermitianElement::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianElement HermitianElement::operator-() const { return HermitianElement(-m_); }

HermitianElement& HermitianElement::operator+=(const HermitianElement& other) {
  require_same_dim(*this, other);
  m_ = symmetrize(m_ + other.m_);
  return *this;
}

HermitianElement& HermitianElement::operator-=(const HermitianElement& other) {
  require_same_dim(*this, other);
  m_ = symmetrize(m_ - other.m_);
  return *this;
}

HermitianElement& HermitianElement::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianElement sandwich(const HermitianElement& a, const HermitianElement& x) {
  require_same_dim(a, x);
  return HermitianElement(a.matrix() * x.matrix() * a.matrix());
}

HermitianElement square(const HermitianElement& x) {
  return HermitianElement(x.matrix() * x.matrix());
}

Matrix SpectralDecomposition::projection(std::size_t i) const {
  const auto v = eigenvectors.col(static_cast<Eigen::Index>(i));
  return v * v.adjoint();
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double SpectralDecomposition::spectral_radius() const {
  return std::max(std::abs(min()), std::abs(max()));
}

SpectralDecomposition spectral_decompose(const HermitianElement& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw SolverError("Hermitian eigensolver did not converge (dim " + std::to_string(x.dim()) +
                      ")");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianElement apply_function(const SpectralDecomposition& spec, const RealFunction& f) {
  RealVector values(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = f(spec.eigenvalues(i));
    if (!std::isfinite(v)) {
      throw DomainError("function is undefined at eigenvalue " +
                        std::to_string(spec.eigenvalues(i)));
    }
    values(i) = v;
  }
  return HermitianElement(spec.eigenvectors * values.cast<Complex>().asDiagonal() *
                          spec.eigenvectors.adjoint());
}

HermitianElement apply_function(const HermitianElement& x, const RealFunction& f) {
  return apply_function(spectral_decompose(x), f);
}

HermitianElement exp_element(const HermitianElement& x) {
  return apply_function(x, [](double v) { return std::exp(v); });
}

double trace_state(const HermitianElement& x) {
  return x.matrix().trace().real() / static_cast<double>(x.dim());
}

Complex trace_state(const Matrix& z) { return z.trace() / static_cast<double>(z.rows()); }

double tail_probability(const SpectralDecomposition& spec, double t) {
  const double threshold = t - boundary_tol(spec);
  const auto count = std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                   [threshold](double v) { return v >= threshold; });
  return static_cast<double>(count) / static_cast<double>(spec.dim());
}

double tail_probability(const HermitianElement& x, double t) {
  return tail_probability(spectral_decompose(x), t);
}

HermitianElement abs_element(const HermitianElement& x) {
  return apply_function(x, [](double v) { return std::abs(v); });
}

double operator_norm(const HermitianElement& x) { return spectral_decompose(x).spectral_radius(); }

double min_eigenvalue(const HermitianElement& x) { return spectral_decompose(x).min(); }

double max_eigenvalue(const HermitianElement& x) { return spectral_decompose(x).max(); }

double schatten_norm(const HermitianElement& x, double p) {
  if (!(p >= 1.0)) throw ParameterError("Schatten norm needs p >= 1, got " + std::to_string(p));
  const auto spec = spectral_decompose(x);
  if (std::isinf(p)) return spec.spectral_radius();
  double sum = 0.0;
  for (double v : spec.eigenvalues) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(spec.dim()), 1.0 / p);
}

bool leq_order(const HermitianElement& x, const HermitianElement& y, double tol) {
  require_same_dim(x, y);
  const double scale = std::max({1.0, operator_norm(x), operator_norm(y)});
  return min_eigenvalue(y - x) >= -tol * scale;
}

double order_defect(const HermitianElement& x, const HermitianElement& y) {
  require_same_dim(x, y);
  return std::max(0.0, -min_eigenvalue(y - x));
}

CheckResult check_golden_thompson(const HermitianElement& y1, const HermitianElement& y2,
                                  const Tolerance& tol) {
  require_same_dim(y1, y2);
  const auto half = apply_function(y1, [](double v) { return std::exp(0.5 * v); });
  const auto e1 = exp_element(y1);
  const auto e2 = exp_element(y2);

  CheckResult r;
  r.theorem = TheoremId::GT;
  r.label = "golden_thompson";
  r.dims = {y1.dim()};
  r.lhs = trace_state(exp_element(y1 + y2));
  const double rhs_sandwich = trace_state(sandwich(half, e2));
  const double rhs_product = trace_state(Matrix(e1.matrix() * e2.matrix())).real();
  r.rhs = std::min(rhs_sandwich, rhs_product);
  r.aux["rhs_sandwich"] = rhs_sandwich;
  r.aux["rhs_product"] = rhs_product;

  const Matrix commutator = y1.matrix() * y2.matrix() - y2.matrix() * y1.matrix();
  const double scale = std::max(1.0, y1.matrix().norm() * y2.matrix().norm());
  const double comm = commutator.norm() / scale;
  r.aux["commutator"] = comm;
  finalize_upper_bound(r, tol);

  if (comm <= 1e-12) {
    const double gap = std::max(std::abs(rhs_sandwich - r.lhs), std::abs(rhs_product - r.lhs));
    r.aux["equality_gap"] = gap / std::max(1.0, std::abs(r.lhs));
    r.holds = r.holds && r.aux["equality_gap"] <= 1e-10;
  }
  return r;
}

CheckResult check_exp_chebyshev(const HermitianElement& x, double t, const Tolerance& tol) {
  const auto spec = spectral_decompose(x);
  CheckResult r;
  r.theorem = TheoremId::CHEB;
  r.label = "exp_chebyshev";
  r.dims = {x.dim()};
  r.param = t;
  r.lhs = tail_probability(spec, t);
  r.rhs = std::exp(-t) * trace_state(apply_function(spec, [](double v) { return std::exp(v); }));
  finalize_upper_bound(r, tol);
  return r;
}

double tail_integral(const HermitianElement& x, double p) {
  if (!(p >= 1.0)) throw ParameterError("tail integral needs p >= 1");
  const auto spec = spectral_decompose(x);
  const double btol = boundary_tol(spec);
  if (spec.min() < -btol) {
    throw PreconditionError("tail integral identity requires a positive element (min eigenvalue " +
                            std::to_string(spec.min()) + ")");
  }
  // Breakpoints of the step function t -> tau(chi_[t,inf)(x)).
  std::vector<double> breaks{0.0};
  for (double v : spec.eigenvalues) {
    if (v > breaks.back() + btol) breaks.push_back(v);
  }
  double total = 0.0;
  for (std::size_t k = 1; k < breaks.size(); ++k) {
    const double lo = breaks[k - 1];
    const double hi = breaks[k];
    const double level = tail_probability(spec, 0.5 * (lo + hi));
    total += level * (std::pow(hi, p) - std::pow(lo, p));
  }
  return total;
}

CheckResult check_lp_integral_identity(const HermitianElement& x, double p) {
  CheckResult r;
  r.theorem = TheoremId::LPID;
  r.label = "lp_integral";
  r.dims = {x.dim()};
  r.param = p;
  r.lhs = tail_integral(x, p);
  r.rhs = trace_state(apply_function(x, [p](double v) { return std::pow(std::max(v, 0.0), p); }));
  finalize_identity(r, 1e-9);
  return r;
}

}  // namespace ncaz
