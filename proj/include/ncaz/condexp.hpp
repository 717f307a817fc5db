#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncaz/algebra.hpp"
#include "ncaz/check_result.hpp"
#include "ncaz/random.hpp"

namespace ncaz {

inline constexpr std::size_t kDefaultMaxAmbientDim = 64;

/// Tensor tower M_0 = C 1 in M_1 in ... in M_n on C^{d_1} (x) ... (x) C^{d_n},
/// where M_j = (matrices on factors 1..j) (x) 1. Factor 1 is the most
/// significant Kronecker index.
class TensorFiltration {
 public:
  explicit TensorFiltration(std::vector<std::size_t> factor_dims,
                            std::size_t max_ambient_dim = kDefaultMaxAmbientDim);

  [[nodiscard]] const std::vector<std::size_t>& factor_dims() const { return dims_; }
  [[nodiscard]] std::size_t levels() const { return dims_.size(); }  // n
  [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
  [[nodiscard]] std::size_t factor_dim(std::size_t j) const;  // 1-based
  /// Dimension carried by M_j: d_1 * ... * d_j (1 for j = 0).
  [[nodiscard]] std::size_t left_dim(std::size_t level) const;
  /// d_{j+1} * ... * d_n.
  [[nodiscard]] std::size_t right_dim(std::size_t level) const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t ambient_;
};

/// 1 (x) ... (x) a (x) ... (x) 1 with a on factor j (1-based).
HermitianElement embed(const HermitianElement& a, std::size_t factor, const TensorFiltration& f);
Matrix embed(const Matrix& a, std::size_t factor, const TensorFiltration& f);

/// a (x) 1 for a acting on factors 1..level.
HermitianElement embed_level(const HermitianElement& a, std::size_t level,
                             const TensorFiltration& f);
Matrix embed_level(const Matrix& a, std::size_t level, const TensorFiltration& f);

/// Normalized partial trace over factors level+1..n, as an operator on factors 1..level.
Matrix reduce_to_level(const Matrix& x, const TensorFiltration& f, std::size_t level);

/// E_j(x) = (id (x) normalized partial trace)(x) (x) 1.
Matrix conditional_expectation(const Matrix& x, const TensorFiltration& f, std::size_t level);
HermitianElement conditional_expectation(const HermitianElement& x, const TensorFiltration& f,
                                         std::size_t level);

/// Orthogonal projections p_1..p_m summing to the identity.
class Pinching {
 public:
  explicit Pinching(std::vector<Matrix> projections);

  /// p_k = 1 (x) e_kk with e_kk a basis projection on factors level+1..n.
  static Pinching traced_basis(const TensorFiltration& f, std::size_t level);
  /// Rank-1 projections onto the standard basis vectors.
  static Pinching standard_basis(std::size_t dim);

  [[nodiscard]] const std::vector<Matrix>& projections() const { return projections_; }
  [[nodiscard]] std::size_t dim() const;
  /// True when every projection is diagonal in the standard basis.
  [[nodiscard]] bool diagonal() const { return diagonal_; }

 private:
  std::vector<Matrix> projections_;
  bool diagonal_ = false;
};

Matrix pinching_expectation(const Matrix& x, const Pinching& pinch);
HermitianElement pinching_expectation(const HermitianElement& x, const Pinching& pinch);

/// Second route to E_j: pinch with traced_basis(f, level), then average the
/// conjugations by 1 (x) S^m over the cyclic shifts S of factors level+1..n.
Matrix conditional_expectation_by_pinching(const Matrix& x, const TensorFiltration& f,
                                           std::size_t level);

/// E_{j-1}(embed(a, j)) = tau(a) 1 for random a on factors j >= 2.
CheckResult verify_order_independence(const TensorFiltration& f, std::size_t samples,
                                      RandomStream& rng);

/// Conditional-expectation axioms on random elements: trace preservation,
/// module property, tower, positivity, L_p contractivity (p = 1, 2, inf) and
/// agreement with an independent pinching realization. One record per axiom.
std::vector<CheckResult> check_ce_axioms(const TensorFiltration& f, RandomStream& rng);

}  // namespace ncaz
