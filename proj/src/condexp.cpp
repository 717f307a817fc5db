#include "ncaz/condexp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "ncaz/error.hpp"

namespace ncaz {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

Matrix identity_matrix(std::size_t d) { return Matrix::Identity(idx(d), idx(d)); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_ambient(const Matrix& x, const TensorFiltration& f) {
  if (static_cast<std::size_t>(x.rows()) != f.ambient_dim() || x.rows() != x.cols()) {
    throw DimensionError("element of dim " + std::to_string(x.rows()) +
                         " does not live on ambient dim " + std::to_string(f.ambient_dim()));
  }
}

void require_level(const TensorFiltration& f, std::size_t level) {
  if (level > f.levels()) {
    throw ParameterError("level " + std::to_string(level) + " out of range 0.." +
                         std::to_string(f.levels()));
  }
}

}  // namespace

TensorFiltration::TensorFiltration(std::vector<std::size_t> factor_dims,
                                   std::size_t max_ambient_dim)
    : dims_(std::move(factor_dims)), ambient_(1) {
  for (std::size_t d : dims_) {
    if (d == 0) throw DimensionError("factor dimensions must be positive");
    ambient_ *= d;
    if (ambient_ > max_ambient_dim) {
      throw DimensionError("ambient dimension exceeds cap " + std::to_string(max_ambient_dim));
    }
  }
}

std::size_t TensorFiltration::factor_dim(std::size_t j) const {
  if (j < 1 || j > dims_.size()) {
    throw ParameterError("factor index " + std::to_string(j) + " out of range 1.." +
                         std::to_string(dims_.size()));
  }
  return dims_[j - 1];
}

std::size_t TensorFiltration::left_dim(std::size_t level) const {
  require_level(*this, level);
  std::size_t d = 1;
  for (std::size_t k = 0; k < level; ++k) d *= dims_[k];
  return d;
}

std::size_t TensorFiltration::right_dim(std::size_t level) const {
  return ambient_ / left_dim(level);
}

Matrix embed(const Matrix& a, std::size_t factor, const TensorFiltration& f) {
  const std::size_t d = f.factor_dim(factor);
  if (static_cast<std::size_t>(a.rows()) != d || a.rows() != a.cols()) {
    throw DimensionError("factor " + std::to_string(factor) + " has dim " + std::to_string(d) +
                         ", got " + std::to_string(a.rows()));
  }
  const Matrix left = Eigen::kroneckerProduct(identity_matrix(f.left_dim(factor - 1)), a).eval();
  return Eigen::kroneckerProduct(left, identity_matrix(f.right_dim(factor))).eval();
}

HermitianElement embed(const HermitianElement& a, std::size_t factor, const TensorFiltration& f) {
  return HermitianElement(embed(a.matrix(), factor, f));
}

Matrix embed_level(const Matrix& a, std::size_t level, const TensorFiltration& f) {
  const std::size_t left = f.left_dim(level);
  if (static_cast<std::size_t>(a.rows()) != left || a.rows() != a.cols()) {
    throw DimensionError("level " + std::to_string(level) + " carries dim " +
                         std::to_string(left) + ", got " + std::to_string(a.rows()));
  }
  return Eigen::kroneckerProduct(a, identity_matrix(f.right_dim(level))).eval();
}

HermitianElement embed_level(const HermitianElement& a, std::size_t level,
                             const TensorFiltration& f) {
  return HermitianElement(embed_level(a.matrix(), level, f));
}

Matrix reduce_to_level(const Matrix& x, const TensorFiltration& f, std::size_t level) {
  require_ambient(x, f);
  require_level(f, level);
  const auto left = idx(f.left_dim(level));
  const auto right = idx(f.right_dim(level));
  Matrix y = Matrix::Zero(left, left);
  for (Eigen::Index l1 = 0; l1 < left; ++l1) {
    for (Eigen::Index l2 = 0; l2 < left; ++l2) {
      Complex sum = 0.0;
      for (Eigen::Index r = 0; r < right; ++r) sum += x(l1 * right + r, l2 * right + r);
      y(l1, l2) = sum / static_cast<double>(right);
    }
  }
  return y;
}

Matrix conditional_expectation(const Matrix& x, const TensorFiltration& f, std::size_t level) {
  return embed_level(reduce_to_level(x, f, level), level, f);
}

HermitianElement conditional_expectation(const HermitianElement& x, const TensorFiltration& f,
                                         std::size_t level) {
  return HermitianElement(conditional_expectation(x.matrix(), f, level));
}

Pinching::Pinching(std::vector<Matrix> projections) : projections_(std::move(projections)) {
  if (projections_.empty()) throw ConstructionError("pinching needs at least one projection");
  const auto d = projections_.front().rows();
  diagonal_ = true;
  for (const Matrix& p : projections_) {
    if (p.rows() != d || p.cols() != d) throw DimensionError("pinching projections differ in size");
    diagonal_ = diagonal_ && max_abs(p - Matrix(p.diagonal().asDiagonal())) == 0.0;
  }
  // Orthogonal projections summing to 1 are automatically mutually orthogonal,
  // so checking each one and the sum suffices.
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < projections_.size(); ++i) {
    const Matrix& p = projections_[i];
    if (max_abs(p - p.adjoint()) > 1e-10) {
      throw ConstructionError("pinching projection " + std::to_string(i) + " not self-adjoint");
    }
    const double idem = diagonal_ ? max_abs(p.diagonal().cwiseProduct(p.diagonal()) - p.diagonal())
                                  : max_abs(p * p - p);
    if (idem > 1e-10) {
      throw ConstructionError("pinching element " + std::to_string(i) + " is not idempotent");
    }
    sum += p;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > 1e-10) {
    throw ConstructionError("pinching projections do not sum to the identity");
  }
}

std::size_t Pinching::dim() const { return static_cast<std::size_t>(projections_.front().rows()); }

Pinching Pinching::traced_basis(const TensorFiltration& f, std::size_t level) {
  const std::size_t right = f.right_dim(level);
  std::vector<Matrix> ps;
  ps.reserve(right);
  for (std::size_t k = 0; k < right; ++k) {
    Matrix e = Matrix::Zero(idx(right), idx(right));
    e(idx(k), idx(k)) = 1.0;
    ps.push_back(Eigen::kroneckerProduct(identity_matrix(f.left_dim(level)), e).eval());
  }
  return Pinching(std::move(ps));
}

Pinching Pinching::standard_basis(std::size_t dim) {
  std::vector<Matrix> ps;
  for (std::size_t k = 0; k < dim; ++k) {
    Matrix e = Matrix::Zero(idx(dim), idx(dim));
    e(idx(k), idx(k)) = 1.0;
    ps.push_back(std::move(e));
  }
  return Pinching(std::move(ps));
}

Matrix pinching_expectation(const Matrix& x, const Pinching& pinch) {
  if (static_cast<std::size_t>(x.rows()) != pinch.dim()) {
    throw DimensionError("pinching dim " + std::to_string(pinch.dim()) + " vs element dim " +
                         std::to_string(x.rows()));
  }
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  if (pinch.diagonal()) {
    for (const auto& p : pinch.projections()) {
      const Eigen::VectorXcd v = p.diagonal();
      out += (v * v.transpose()).cwiseProduct(x);
    }
    return out;
  }
  for (const auto& p : pinch.projections()) out += p * x * p;
  return out;
}

HermitianElement pinching_expectation(const HermitianElement& x, const Pinching& pinch) {
  return HermitianElement(pinching_expectation(x.matrix(), pinch));
}

Matrix conditional_expectation_by_pinching(const Matrix& x, const TensorFiltration& f,
                                           std::size_t level) {
  require_ambient(x, f);
  const Matrix pinched = pinching_expectation(x, Pinching::traced_basis(f, level));
  const auto left = idx(f.left_dim(level));
  const auto right = idx(f.right_dim(level));
  // 1 (x) S^m as a permutation of the ambient basis
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  Eigen::PermutationMatrix<Eigen::Dynamic> u(x.rows());
  for (Eigen::Index m = 0; m < right; ++m) {
    for (Eigen::Index l = 0; l < left; ++l) {
      for (Eigen::Index r = 0; r < right; ++r) u.indices()(l * right + r) = l * right + (r + m) % right;
    }
    acc += Matrix(u * pinched * u.transpose());
  }
  return acc / static_cast<double>(right);
}

CheckResult verify_order_independence(const TensorFiltration& f, std::size_t samples,
                                      RandomStream& rng) {
  CheckResult r;
  r.theorem = TheoremId::ORDER_INDEP;
  r.label = "order_independence";
  r.dims = f.factor_dims();
  r.n_steps = f.levels();
  r.rhs = 1e-10;
  if (f.levels() < 2) {
    r.degenerate = true;
    r.note = "needs at least two factors";
    finalize_upper_bound(r, Tolerance{});
    return r;
  }
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t j = 2 + rng.index(f.levels() - 1);
    const auto a = random_hermitian(f.factor_dim(j), rng);
    const auto lhs = conditional_expectation(embed(a, j, f), f, j - 1);
    const auto rhs = HermitianElement::scalar(f.ambient_dim(), trace_state(a));
    const double scale = std::max(1.0, max_abs(a.matrix()));
    worst = std::max(worst, max_abs(lhs.matrix() - rhs.matrix()) / scale);
  }
  r.lhs = worst;
  r.residual = worst;
  r.aux["samples"] = static_cast<double>(samples);
  finalize_upper_bound(r, Tolerance{0.0, 0.0});
  return r;
}

std::vector<CheckResult> check_ce_axioms(const TensorFiltration& f, RandomStream& rng) {
  const std::size_t n = f.levels();
  const std::size_t d = f.ambient_dim();
  const auto x = random_hermitian(d, rng);
  const auto pos = random_positive(d, rng);
  const double x_scale = std::max(1.0, max_abs(x.matrix()));

  auto make = [&](std::string label) {
    CheckResult r;
    r.theorem = TheoremId::CE_AXIOMS;
    r.label = std::move(label);
    r.dims = f.factor_dims();
    r.n_steps = n;
    return r;
  };

  double trace_err = 0.0, module_err = 0.0, tower_err = 0.0, pos_defect = 0.0, pinch_err = 0.0;
  std::vector<Matrix> ex(n + 1);
  for (std::size_t j = 0; j <= n; ++j) ex[j] = conditional_expectation(x.matrix(), f, j);

  for (std::size_t j = 0; j <= n; ++j) {
    trace_err = std::max(trace_err, std::abs(trace_state(ex[j]) - trace_state(x.matrix())) / x_scale);

    const Matrix a = embed_level(random_hermitian(f.left_dim(j), rng).matrix(), j, f);
    const Matrix b = embed_level(random_hermitian(f.left_dim(j), rng).matrix(), j, f);
    const Matrix lhs = conditional_expectation(Matrix(a * x.matrix() * b), f, j);
    const Matrix rhs = a * ex[j] * b;
    const double mscale = std::max(1.0, max_abs(a) * max_abs(b) * x_scale);
    module_err = std::max(module_err, max_abs(lhs - rhs) / mscale);

    for (std::size_t i = 0; i <= n; ++i) {
      const Matrix both = conditional_expectation(ex[j], f, i);
      tower_err = std::max(tower_err, max_abs(both - ex[std::min(i, j)]) / x_scale);
    }

    const auto e_pos = conditional_expectation(pos, f, j);
    pos_defect = std::max(pos_defect, std::max(0.0, -min_eigenvalue(e_pos)));

    pinch_err = std::max(
        pinch_err, max_abs(conditional_expectation_by_pinching(x.matrix(), f, j) - ex[j]) / x_scale);
  }

  std::vector<CheckResult> out;
  auto residual_record = [&](std::string label, double err, double threshold) {
    auto r = make(std::move(label));
    r.lhs = err;
    r.rhs = threshold;
    r.residual = err;
    finalize_upper_bound(r, Tolerance{0.0, 0.0});
    out.push_back(std::move(r));
  };
  residual_record("trace_preservation", trace_err, 1e-10);
  residual_record("module_property", module_err, 1e-9);
  residual_record("tower", tower_err, 1e-10);
  residual_record("positivity", pos_defect, 1e-10);

  const std::array<std::pair<const char*, double>, 3> ps{
      {{"contractivity_p1", 1.0}, {"contractivity_p2", 2.0}, {"contractivity_pinf", INFINITY}}};
  for (const auto& [label, p] : ps) {
    auto r = make(label);
    r.param = p;
    const double base = schatten_norm(x, p);
    double worst_ratio = -1.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double v = schatten_norm(HermitianElement(ex[j]), p);
      const double ratio = safe_ratio(v, base);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        r.lhs = v;
        r.rhs = base;
      }
    }
    finalize_upper_bound(r, Tolerance{});
    out.push_back(std::move(r));
  }
  residual_record("pinching_cross_check", pinch_err, 1e-10);
  return out;
}

}  // namespace ncaz
