#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncaz/algebra.hpp"
#include "ncaz/check_result.hpp"
#include "ncaz/condexp.hpp"
#include "ncaz/random.hpp"

namespace ncaz {

enum class SequenceKind { Martingale, Supermartingale };

/// Finite adapted sequence (x_0, ..., x_n) over the first n levels of a tensor
/// filtration (n may be smaller than the number of levels). Construction checks
/// shape only; validate_martingale / validate_supermartingale check the relations.
class MartingaleSequence {
 public:
  MartingaleSequence(TensorFiltration filtration, std::vector<HermitianElement> terms,
                     SequenceKind kind);

  [[nodiscard]] const TensorFiltration& filtration() const { return filtration_; }
  [[nodiscard]] const std::vector<HermitianElement>& terms() const { return terms_; }
  [[nodiscard]] SequenceKind kind() const { return kind_; }
  [[nodiscard]] std::size_t steps() const { return terms_.size() - 1; }  // n
  [[nodiscard]] const HermitianElement& term(std::size_t j) const { return terms_.at(j); }

  /// dx_j = x_j - x_{j-1} for j = 0..n with x_{-1} = 0, so dx_0 = x_0.
  [[nodiscard]] std::vector<HermitianElement> differences() const;
  [[nodiscard]] HermitianElement difference(std::size_t j) const;
  /// x_n - x_0 = sum_{j=1}^n dx_j.
  [[nodiscard]] HermitianElement increment() const;

  [[nodiscard]] MartingaleSequence negated() const;

 private:
  TensorFiltration filtration_;
  std::vector<HermitianElement> terms_;
  SequenceKind kind_;
};

/// x_j = E_j(y).
MartingaleSequence doob_martingale(const HermitianElement& y, const TensorFiltration& f);

enum class DrawKind {
  Gue,       // complex Gaussian Hermitian on factors 1..j
  Diagonal,  // real diagonal entries, commutative instances
};

/// d in M_j with E_{j-1}(d) = 0 and ||d|| = c (before roundoff). Retries a
/// vanishing draw up to 8 times, then throws ConstructionError.
HermitianElement random_centered_difference(const TensorFiltration& f, std::size_t level, double c,
                                            RandomStream& rng, DrawKind kind = DrawKind::Gue);

/// x_j = x0 + sum_{k <= j} diffs[k-1]. Throws ConstructionError naming the
/// first index whose difference is not in M_j or not centered.
MartingaleSequence martingale_from_differences(const TensorFiltration& f,
                                               std::span<const HermitianElement> diffs,
                                               const HermitianElement& x0);

/// n-step martingale from random centered differences with norms uniform in
/// (0.25 c, c].
MartingaleSequence random_martingale(const TensorFiltration& f, double c, RandomStream& rng,
                                     DrawKind kind = DrawKind::Gue);

/// x_0 = 0, x_j = x_{j-1} + d_j - s_j with d_j centered of norm step_scale and
/// s_j >= 0 in M_{j-1} of norm drift_scale.
MartingaleSequence random_supermartingale(const TensorFiltration& f, double drift_scale,
                                          double step_scale, RandomStream& rng);

/// Worst adaptedness and (super)martingale residual; holds iff it is below
/// 1e-10 * max(1, max_j ||x_j||).
CheckResult validate_martingale(const MartingaleSequence& seq);
CheckResult validate_supermartingale(const MartingaleSequence& seq);

/// c_j = ||dx_j||, floored at 1e-12.
BoundParams extract_azuma_params(const MartingaleSequence& seq);

/// With v_j = x_j - E_{j-1}(x_j):
///   sigma_j^2 = max(0, lambda_max(E_{j-1}(v_j^2) - b_j x_{j-1}))
///   M = max(1e-8, max_j lambda_max(v_j - a_j))
///   M_j = lambda_max(x_j - x_0), D = max_{1 <= j <= n-1} M_j (0 when n = 1)
/// Empty a or b mean all zeros.
BoundParams extract_variance_params(const MartingaleSequence& seq, std::span<const double> b = {},
                                    std::span<const double> a = {});

/// Constants valid for both x and -x, as needed by two-sided bounds:
/// entrywise max of extract_variance_params on seq and seq.negated(), and
/// step_max[j] = ||dx_j||.
BoundParams extract_two_sided_params(const MartingaleSequence& seq, std::span<const double> b = {},
                                     std::span<const double> a = {});

struct HypothesisReport {
  bool holds = true;
  double worst = 0.0;     // largest normalized order defect
  std::size_t step = 0;   // step attaining it
};

/// -c_j <= dx_j <= c_j for j = 1..n.
HypothesisReport check_lipschitz_hypothesis(const MartingaleSequence& seq,
                                            std::span<const double> c, double tol = 1e-8);

/// (i) E_{j-1}(v_j^2) <= sigma_j^2 + b_j x_{j-1} and (ii) v_j <= a_j + M.
HypothesisReport check_variance_hypothesis(const MartingaleSequence& seq, const BoundParams& p,
                                           double tol = 1e-8);

}  // namespace ncaz
