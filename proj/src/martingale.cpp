#include "ncaz/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncaz/error.hpp"

namespace ncaz {

namespace {

constexpr double kMinLipschitz = 1e-12;
constexpr double kMinRange = 1e-8;
constexpr double kCenteringTol = 1e-10;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double coefficient(std::span<const double> v, std::size_t j) { return v.empty() ? 0.0 : v[j]; }

void require_length(std::span<const double> v, std::size_t n, const char* name) {
  if (!v.empty() && v.size() != n) {
    throw ParameterError(std::string(name) + " must have one entry per step (" + std::to_string(n) +
                         "), got " + std::to_string(v.size()));
  }
}

// Residual of "x lies in M_level": ||E_level(x) - x|| relative to max(1, ||x||).
double adaptedness_residual(const HermitianElement& x, const TensorFiltration& f, std::size_t level) {
  const Matrix diff = conditional_expectation(x.matrix(), f, level) - x.matrix();
  return max_abs(diff) / std::max(1.0, max_abs(x.matrix()));
}

HermitianElement draw_on_level(const TensorFiltration& f, std::size_t level, RandomStream& rng,
                               DrawKind kind) {
  const std::size_t left = f.left_dim(level);
  if (kind == DrawKind::Diagonal) {
    std::vector<double> values(left);
    for (auto& v : values) v = rng.normal();
    return embed_level(HermitianElement::diagonal(values), level, f);
  }
  return embed_level(random_hermitian(left, rng), level, f);
}

CheckResult validate(const MartingaleSequence& seq, bool super) {
  const auto& f = seq.filtration();
  CheckResult r;
  r.theorem = TheoremId::MART_VALID;
  r.label = super ? "supermartingale" : "martingale";
  r.dims = f.factor_dims();
  r.n_steps = seq.steps();

  double scale = 1.0;
  for (const auto& x : seq.terms()) scale = std::max(scale, operator_norm(x));

  double worst = 0.0;
  for (std::size_t j = 0; j <= seq.steps(); ++j) {
    worst = std::max(worst, adaptedness_residual(seq.term(j), f, j));
    if (j == 0) continue;
    const auto cond = conditional_expectation(seq.term(j), f, j - 1);
    const double rel = super ? order_defect(cond, seq.term(j - 1))
                             : operator_norm(cond - seq.term(j - 1));
    worst = std::max(worst, rel / scale);
  }
  r.lhs = worst;
  r.rhs = 1e-10;
  r.residual = worst;
  finalize_upper_bound(r, Tolerance{0.0, 0.0});
  return r;
}

}  // namespace

MartingaleSequence::MartingaleSequence(TensorFiltration filtration,
                                       std::vector<HermitianElement> terms, SequenceKind kind)
    : filtration_(std::move(filtration)), terms_(std::move(terms)), kind_(kind) {
  if (terms_.empty() || terms_.size() > filtration_.levels() + 1) {
    throw ConstructionError("sequence needs 1.." + std::to_string(filtration_.levels() + 1) +
                            " terms for " + std::to_string(filtration_.levels()) + " levels, got " +
                            std::to_string(terms_.size()));
  }
  for (const auto& x : terms_) {
    if (x.dim() != filtration_.ambient_dim()) {
      throw DimensionError("term of dim " + std::to_string(x.dim()) + " on ambient dim " +
                           std::to_string(filtration_.ambient_dim()));
    }
  }
}

std::vector<HermitianElement> MartingaleSequence::differences() const {
  std::vector<HermitianElement> out;
  out.reserve(terms_.size());
  for (std::size_t j = 0; j < terms_.size(); ++j) out.push_back(difference(j));
  return out;
}

HermitianElement MartingaleSequence::difference(std::size_t j) const {
  return j == 0 ? terms_.at(0) : terms_.at(j) - terms_.at(j - 1);
}

HermitianElement MartingaleSequence::increment() const { return terms_.back() - terms_.front(); }

MartingaleSequence MartingaleSequence::negated() const {
  std::vector<HermitianElement> neg;
  neg.reserve(terms_.size());
  for (const auto& x : terms_) neg.push_back(-x);
  return MartingaleSequence(filtration_, std::move(neg), kind_);
}

MartingaleSequence doob_martingale(const HermitianElement& y, const TensorFiltration& f) {
  std::vector<HermitianElement> terms;
  terms.reserve(f.levels() + 1);
  for (std::size_t j = 0; j <= f.levels(); ++j) terms.push_back(conditional_expectation(y, f, j));
  return MartingaleSequence(f, std::move(terms), SequenceKind::Martingale);
}

HermitianElement random_centered_difference(const TensorFiltration& f, std::size_t level, double c,
                                            RandomStream& rng, DrawKind kind) {
  if (!(c > 0.0)) throw ParameterError("difference scale c must be positive");
  if (level < 1 || level > f.levels()) {
    throw ParameterError("difference level " + std::to_string(level) + " out of range 1.." +
                         std::to_string(f.levels()));
  }
  for (int attempt = 0; attempt < 8; ++attempt) {
    const auto raw = draw_on_level(f, level, rng, kind);
    const auto centered = raw - conditional_expectation(raw, f, level - 1);
    const double norm = operator_norm(centered);
    if (norm > 1e-12 * std::max(1.0, operator_norm(raw))) return centered * (c / norm);
  }
  throw ConstructionError("centered difference at level " + std::to_string(level) +
                          " vanished on every draw (factor dimension 1?)");
}

MartingaleSequence martingale_from_differences(const TensorFiltration& f,
                                               std::span<const HermitianElement> diffs,
                                               const HermitianElement& x0) {
  if (diffs.size() > f.levels()) {
    throw ConstructionError("more differences than filtration levels");
  }
  if (adaptedness_residual(x0, f, 0) > kCenteringTol) {
    throw ConstructionError("x0 is not a scalar (not in M_0)");
  }
  std::vector<HermitianElement> terms{x0};
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    const std::size_t level = k + 1;
    const auto& d = diffs[k];
    if (d.dim() != f.ambient_dim()) {
      throw ConstructionError("difference " + std::to_string(level) + " has wrong dimension");
    }
    const double scale = std::max(1.0, max_abs(d.matrix()));
    const double centering = max_abs(conditional_expectation(d.matrix(), f, level - 1)) / scale;
    if (adaptedness_residual(d, f, level) > kCenteringTol || centering > kCenteringTol) {
      throw ConstructionError("difference " + std::to_string(level) +
                              " is not a centered element of M_" + std::to_string(level));
    }
    terms.push_back(terms.back() + d);
  }
  return MartingaleSequence(f, std::move(terms), SequenceKind::Martingale);
}

MartingaleSequence random_martingale(const TensorFiltration& f, double c, RandomStream& rng,
                                     DrawKind kind) {
  std::vector<HermitianElement> terms{HermitianElement::zero(f.ambient_dim())};
  for (std::size_t j = 1; j <= f.levels(); ++j) {
    auto sub = rng.substream(j);
    const double cj = c * sub.uniform(0.25, 1.0);
    terms.push_back(terms.back() + random_centered_difference(f, j, cj, sub, kind));
  }
  return MartingaleSequence(f, std::move(terms), SequenceKind::Martingale);
}

MartingaleSequence random_supermartingale(const TensorFiltration& f, double drift_scale,
                                          double step_scale, RandomStream& rng) {
  if (drift_scale < 0.0) throw ParameterError("drift scale must be nonnegative");
  std::vector<HermitianElement> terms{HermitianElement::zero(f.ambient_dim())};
  for (std::size_t j = 1; j <= f.levels(); ++j) {
    auto sub = rng.substream(j);
    auto next = terms.back() + random_centered_difference(f, j, step_scale, sub);
    if (drift_scale > 0.0) {
      const auto s = embed_level(random_positive(f.left_dim(j - 1), sub), j - 1, f);
      next -= s * drift_scale;
    }
    terms.push_back(std::move(next));
  }
  return MartingaleSequence(f, std::move(terms),
                            drift_scale > 0.0 ? SequenceKind::Supermartingale
                                              : SequenceKind::Martingale);
}

CheckResult validate_martingale(const MartingaleSequence& seq) { return validate(seq, false); }

CheckResult validate_supermartingale(const MartingaleSequence& seq) { return validate(seq, true); }

BoundParams extract_azuma_params(const MartingaleSequence& seq) {
  BoundParams p;
  for (std::size_t j = 1; j <= seq.steps(); ++j) {
    p.c.push_back(std::max(kMinLipschitz, operator_norm(seq.difference(j))));
  }
  return p;
}

BoundParams extract_variance_params(const MartingaleSequence& seq, std::span<const double> b,
                                    std::span<const double> a) {
  const std::size_t n = seq.steps();
  require_length(b, n, "b");
  require_length(a, n, "a");
  const auto& f = seq.filtration();
  const std::size_t d = f.ambient_dim();

  BoundParams p;
  p.M = kMinRange;
  for (std::size_t j = 1; j <= n; ++j) {
    const double bj = coefficient(b, j - 1);
    const double aj = coefficient(a, j - 1);
    p.b.push_back(bj);
    p.a.push_back(aj);

    const auto v = seq.term(j) - conditional_expectation(seq.term(j), f, j - 1);
    const auto cond_var = conditional_expectation(square(v), f, j - 1);
    p.sigma_sq.push_back(std::max(0.0, max_eigenvalue(cond_var - seq.term(j - 1) * bj)));
    p.M = std::max(p.M, max_eigenvalue(v - HermitianElement::scalar(d, aj)));
    p.level_max.push_back(max_eigenvalue(seq.term(j) - seq.term(0)));
    p.step_max.push_back(max_eigenvalue(seq.difference(j)));
  }
  p.D = 0.0;
  if (n >= 2) {
    p.D = *std::max_element(p.level_max.begin(), p.level_max.end() - 1);
  }
  for (double s : p.sigma_sq) p.K_sq += s;
  for (double bj : p.b) p.b_total_sq += bj * bj;
  return p;
}

BoundParams extract_two_sided_params(const MartingaleSequence& seq, std::span<const double> b,
                                     std::span<const double> a) {
  auto up = extract_variance_params(seq, b, a);
  const auto down = extract_variance_params(seq.negated(), b, a);
  for (std::size_t j = 0; j < up.sigma_sq.size(); ++j) {
    up.sigma_sq[j] = std::max(up.sigma_sq[j], down.sigma_sq[j]);
    up.level_max[j] = std::max(up.level_max[j], down.level_max[j]);
    up.step_max[j] = std::max(up.step_max[j], down.step_max[j]);
  }
  up.M = std::max(up.M, down.M);
  up.D = std::max(up.D, down.D);
  up.K_sq = 0.0;
  for (double s : up.sigma_sq) up.K_sq += s;
  return up;
}

HypothesisReport check_lipschitz_hypothesis(const MartingaleSequence& seq,
                                            std::span<const double> c, double tol) {
  require_length(c, seq.steps(), "c");
  if (c.empty() && seq.steps() > 0) throw ParameterError("c must have one entry per step");
  HypothesisReport rep;
  const std::size_t d = seq.filtration().ambient_dim();
  for (std::size_t j = 1; j <= seq.steps(); ++j) {
    const auto dx = seq.difference(j);
    const auto bound = HermitianElement::scalar(d, c[j - 1]);
    const double scale = std::max({1.0, operator_norm(dx), c[j - 1]});
    const double defect = std::max(order_defect(dx, bound), order_defect(-bound, dx)) / scale;
    if (defect > rep.worst) {
      rep.worst = defect;
      rep.step = j;
    }
  }
  rep.holds = rep.worst <= tol;
  return rep;
}

HypothesisReport check_variance_hypothesis(const MartingaleSequence& seq, const BoundParams& p,
                                           double tol) {
  const std::size_t n = seq.steps();
  if (p.sigma_sq.size() != n) throw ParameterError("sigma_sq must have one entry per step");
  require_length(p.a, n, "a");
  require_length(p.b, n, "b");
  const auto& f = seq.filtration();
  const std::size_t d = f.ambient_dim();
  HypothesisReport rep;
  for (std::size_t j = 1; j <= n; ++j) {
    const double aj = coefficient(p.a, j - 1);
    const double bj = coefficient(p.b, j - 1);
    const auto v = seq.term(j) - conditional_expectation(seq.term(j), f, j - 1);
    const auto cond_var = conditional_expectation(square(v), f, j - 1);
    const auto var_bound = HermitianElement::scalar(d, p.sigma_sq[j - 1]) + seq.term(j - 1) * bj;
    const auto range_bound = HermitianElement::scalar(d, aj + p.M);

    const double s1 = std::max({1.0, operator_norm(cond_var), operator_norm(var_bound)});
    const double s2 = std::max({1.0, operator_norm(v), std::abs(aj + p.M)});
    const double defect =
        std::max(order_defect(cond_var, var_bound) / s1, order_defect(v, range_bound) / s2);
    if (defect > rep.worst) {
      rep.worst = defect;
      rep.step = j;
    }
  }
  rep.holds = rep.worst <= tol;
  return rep;
}

}  // namespace ncaz
