#include "ncaz/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ncaz/bounds.hpp"
#include "ncaz/error.hpp"

namespace ncaz {

namespace {

constexpr double kHypothesisTol = 1e-8;
constexpr double kMinNorm = 1e-12;

CheckResult base_record(TheoremId id, const MartingaleSequence& seq, double param) {
  CheckResult r;
  r.theorem = id;
  r.dims = seq.filtration().factor_dims();
  r.n_steps = seq.steps();
  r.param = param;
  return r;
}

// Martingale validation shared by the martingale checkers; a failing
// validation record replaces the theorem records.
std::optional<CheckResult> reject_invalid(const MartingaleSequence& seq, double* residual) {
  auto v = validate_martingale(seq);
  *residual = v.residual;
  if (v.holds) return std::nullopt;
  v.note = "instance is not a martingale";
  return v;
}

void require_hypothesis(const HypothesisReport& rep, const char* what) {
  if (!rep.holds) {
    throw PreconditionError(std::string(what) + " hypothesis fails at step " +
                            std::to_string(rep.step) + " (defect " + std::to_string(rep.worst) +
                            ")");
  }
}

void require_two_sided_hypothesis(const MartingaleSequence& seq, const BoundParams& p) {
  require_hypothesis(check_variance_hypothesis(seq, p, kHypothesisTol), "variance/range");
  require_hypothesis(check_variance_hypothesis(seq.negated(), p, kHypothesisTol),
                     "variance/range (negated)");
}

// Embeds centered factor elements and returns the partial-sum martingale.
MartingaleSequence independent_sum(const TensorFiltration& f,
                                   std::span<const HermitianElement> elements) {
  if (elements.size() > f.levels()) {
    throw ParameterError("more elements than tensor factors");
  }
  std::vector<HermitianElement> embedded;
  embedded.reserve(elements.size());
  for (std::size_t j = 0; j < elements.size(); ++j) {
    const auto& a = elements[j];
    const double scale = std::max(1.0, operator_norm(a));
    if (std::abs(trace_state(a)) > 1e-10 * scale) {
      throw PreconditionError("element " + std::to_string(j + 1) +
                              " is not centered: tau = " + std::to_string(trace_state(a)));
    }
    embedded.push_back(embed(a, j + 1, f));
  }
  return martingale_from_differences(f, embedded, HermitianElement::zero(f.ambient_dim()));
}

// One record per grid value from a prototype carrying the shared fields.
std::vector<CheckResult> over_grid(const CheckResult& proto, std::span<const double> grid,
                                   const std::function<void(CheckResult&, double)>& fill,
                                   const Tolerance& tol) {
  std::vector<CheckResult> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CheckResult r = proto;
    r.grid_index = i;
    r.param = grid[i];
    fill(r, grid[i]);
    finalize_upper_bound(r, tol);
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult single(std::vector<CheckResult> records) {
  if (records.empty()) throw SolverError("checker produced no record");
  return std::move(records.front());
}

// Shared by the one- and two-sided supermartingale forms.
void fill_super(CheckResult& r, double lambda, const SpectralDecomposition& tail_spec,
                bool two_sided) {
  const auto& p = r.params;
  const double den = bounds::supermartingale_denominator(lambda, p.sigma_sq, p.a, p.b, p.M, p.D);
  r.aux["denominator"] = den;
  r.lhs = tail_probability(tail_spec, lambda);
  if (den <= 0.0) {
    r.degenerate = true;
    r.note = "nonpositive denominator";
    r.rhs = NAN;
  } else if (two_sided) {
    r.rhs = bounds::supermartingale_two_sided_bound(lambda, p.sigma_sq, p.a, p.b, p.M, p.D);
  } else {
    r.rhs = bounds::supermartingale_bound(lambda, p.sigma_sq, p.a, p.b, p.M, p.D);
  }
}

}  // namespace

std::vector<CheckResult> check_azuma_grid(const MartingaleSequence& seq,
                                          std::span<const double> lambdas, const Tolerance& tol) {
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};

  auto proto = base_record(TheoremId::AZUMA, seq, 0.0);
  proto.residual = residual;
  proto.params = extract_azuma_params(seq);
  if (seq.steps() == 0) {
    return over_grid(proto, lambdas, [](CheckResult& r, double) {
      r.degenerate = true;
      r.note = "no steps";
    }, tol);
  }
  require_hypothesis(check_lipschitz_hypothesis(seq, proto.params.c, kHypothesisTol), "Lipschitz");
  const auto spec = spectral_decompose(abs_element(seq.increment()));
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    r.lhs = tail_probability(spec, lambda);
    r.rhs = bounds::azuma_bound(lambda, r.params.c);
  }, tol);
}

CheckResult check_azuma(const MartingaleSequence& seq, double lambda, const Tolerance& tol) {
  return single(check_azuma_grid(seq, std::span(&lambda, 1), tol));
}

std::vector<CheckResult> check_hoeffding_grid(const TensorFiltration& f,
                                              std::span<const HermitianElement> elements,
                                              std::span<const double> ts, const Tolerance& tol) {
  if (elements.empty()) throw ParameterError("Hoeffding check needs at least one element");
  const auto seq = independent_sum(f, elements);
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};

  auto proto = base_record(TheoremId::HOEFFDING, seq, 0.0);
  proto.residual = residual;
  for (const auto& a : elements) proto.params.c.push_back(std::max(kMinNorm, operator_norm(a)));
  require_hypothesis(check_lipschitz_hypothesis(seq, proto.params.c, kHypothesisTol), "Lipschitz");
  const auto spec = spectral_decompose(abs_element(seq.increment()));
  return over_grid(proto, ts, [&](CheckResult& r, double t) {
    r.lhs = tail_probability(spec, t);
    r.rhs = bounds::hoeffding_bound(t, r.params.c);
  }, tol);
}

CheckResult check_hoeffding(const TensorFiltration& f, std::span<const HermitianElement> elements,
                            double t, const Tolerance& tol) {
  return single(check_hoeffding_grid(f, elements, std::span(&t, 1), tol));
}

std::vector<CheckResult> check_mcdiarmid_grid(const HermitianElement& y, const TensorFiltration& f,
                                              std::span<const double> ts, const Tolerance& tol) {
  const auto seq = doob_martingale(y, f);
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};

  auto proto = base_record(TheoremId::MCDIARMID, seq, 0.0);
  proto.residual = residual;
  proto.params = extract_azuma_params(seq);
  require_hypothesis(check_lipschitz_hypothesis(seq, proto.params.c, kHypothesisTol), "Lipschitz");
  const auto centered = y - HermitianElement::scalar(y.dim(), trace_state(y));
  const auto spec = spectral_decompose(abs_element(centered));
  return over_grid(proto, ts, [&](CheckResult& r, double t) {
    r.lhs = tail_probability(spec, t);
    r.rhs = bounds::azuma_bound(t, r.params.c);
  }, tol);
}

CheckResult check_mcdiarmid(const HermitianElement& y, const TensorFiltration& f, double t,
                            const Tolerance& tol) {
  return single(check_mcdiarmid_grid(y, f, std::span(&t, 1), tol));
}

std::vector<CheckResult> check_scalar_chernoff_grid(const TensorFiltration& f,
                                                    const std::vector<std::vector<double>>& values,
                                                    std::span<const double> ts,
                                                    const Tolerance& tol) {
  if (values.empty() || values.size() > f.levels()) {
    throw ParameterError("Chernoff check needs 1..levels diagonal factors");
  }
  std::vector<HermitianElement> elements;
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (double v : values[j]) {
      if (std::abs(v) > 1.0 + 1e-12) throw PreconditionError("Chernoff values must lie in [-1, 1]");
    }
    elements.push_back(HermitianElement::diagonal(values[j]));
  }
  const auto seq = independent_sum(f, elements);
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};

  auto proto = base_record(TheoremId::CHERNOFF, seq, 0.0);
  proto.residual = residual;
  const auto spec = spectral_decompose(abs_element(seq.increment()));
  const double slack = 1e-10 * std::max(1.0, spec.spectral_radius());

  // Direct enumeration of the uniform product measure on the diagonal indices.
  std::vector<double> sums;
  std::vector<std::size_t> digit(values.size(), 0);
  while (true) {
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) s += values[j][digit[j]];
    sums.push_back(std::abs(s));
    std::size_t k = 0;
    while (k < values.size() && ++digit[k] == values[k].size()) digit[k++] = 0;
    if (k == values.size()) break;
  }

  auto out = over_grid(proto, ts, [&](CheckResult& r, double t) {
    r.lhs = tail_probability(spec, t);
    r.rhs = bounds::scalar_chernoff_bound(t, values.size());
    const auto hits = std::count_if(sums.begin(), sums.end(),
                                    [&](double s) { return s >= t - slack; });
    const double enumeration = static_cast<double>(hits) / static_cast<double>(sums.size());
    r.aux["enumeration"] = enumeration;
    r.residual = std::max(r.residual, std::abs(enumeration - r.lhs));
  }, tol);
  for (auto& r : out) {
    if (std::abs(r.aux["enumeration"] - r.lhs) > 1e-12) {
      r.holds = false;
      r.note = "spectral tail disagrees with enumeration";
    }
  }
  return out;
}

CheckResult check_scalar_chernoff(const TensorFiltration& f,
                                  const std::vector<std::vector<double>>& values, double t,
                                  const Tolerance& tol) {
  return single(check_scalar_chernoff_grid(f, values, std::span(&t, 1), tol));
}

std::vector<CheckResult> check_supermartingale_azuma_grid(const MartingaleSequence& seq,
                                                          std::span<const double> lambdas,
                                                          std::span<const double> a,
                                                          std::span<const double> b,
                                                          const Tolerance& tol) {
  auto valid = validate_supermartingale(seq);
  if (!valid.holds) {
    valid.note = "instance is not a supermartingale";
    return {valid};
  }
  auto proto = base_record(TheoremId::SUPER_AZUMA, seq, 0.0);
  proto.label = "one_sided";
  proto.residual = valid.residual;
  proto.params = extract_variance_params(seq, b, a);
  require_hypothesis(check_variance_hypothesis(seq, proto.params, kHypothesisTol),
                     "variance/range");
  const auto spec = spectral_decompose(seq.increment());
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    fill_super(r, lambda, spec, false);
  }, tol);
}

CheckResult check_supermartingale_azuma(const MartingaleSequence& seq, double lambda,
                                        std::span<const double> a, std::span<const double> b,
                                        const Tolerance& tol) {
  return single(check_supermartingale_azuma_grid(seq, std::span(&lambda, 1), a, b, tol));
}

std::vector<CheckResult> check_supermartingale_two_sided_grid(const MartingaleSequence& seq,
                                                              std::span<const double> lambdas,
                                                              std::span<const double> a,
                                                              std::span<const double> b,
                                                              const Tolerance& tol) {
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};
  auto proto = base_record(TheoremId::SUPER_AZUMA, seq, 0.0);
  proto.label = "two_sided";
  proto.residual = residual;
  proto.params = extract_two_sided_params(seq, b, a);
  require_two_sided_hypothesis(seq, proto.params);
  const auto spec = spectral_decompose(abs_element(seq.increment()));
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    fill_super(r, lambda, spec, true);
  }, tol);
}

CheckResult check_supermartingale_two_sided(const MartingaleSequence& seq, double lambda,
                                            std::span<const double> a, std::span<const double> b,
                                            const Tolerance& tol) {
  return single(check_supermartingale_two_sided_grid(seq, std::span(&lambda, 1), a, b, tol));
}

std::vector<CheckResult> check_thm32_grid(const MartingaleSequence& seq,
                                          std::span<const double> lambdas,
                                          std::span<const double> a, const Tolerance& tol) {
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};
  auto proto = base_record(TheoremId::THM32, seq, 0.0);
  proto.residual = residual;
  proto.params = extract_two_sided_params(seq, {}, a);
  require_two_sided_hypothesis(seq, proto.params);
  const auto spec = spectral_decompose(abs_element(seq.increment()));
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    r.lhs = tail_probability(spec, lambda);
    r.rhs = bounds::martingale_variance_bound(lambda, r.params.sigma_sq, r.params.a, r.params.M);
  }, tol);
}

CheckResult check_thm32(const MartingaleSequence& seq, double lambda, std::span<const double> a,
                        const Tolerance& tol) {
  return single(check_thm32_grid(seq, std::span(&lambda, 1), a, tol));
}

std::vector<CheckResult> check_mgf_grid(const MartingaleSequence& seq,
                                        std::span<const double> lambdas, const Tolerance& tol) {
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};
  auto proto = base_record(TheoremId::MGF, seq, 0.0);
  proto.residual = residual;
  proto.params = extract_variance_params(seq);
  require_hypothesis(check_variance_hypothesis(seq, proto.params, kHypothesisTol),
                     "variance/range");
  const auto spec = spectral_decompose(seq.increment());
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    r.lhs = trace_state(apply_function(spec, [lambda](double v) { return std::exp(lambda * v); }));
    if (!(lambda > 0.0) || !(lambda < 3.0 / r.params.M)) {
      r.degenerate = true;
      r.note = "lambda_out_of_range";
      r.rhs = NAN;
    } else {
      r.rhs = bounds::mgf_bound(lambda, r.params.K_sq, r.params.M);
    }
  }, tol);
}

CheckResult check_mgf(const MartingaleSequence& seq, double lambda, const Tolerance& tol) {
  return single(check_mgf_grid(seq, std::span(&lambda, 1), tol));
}

std::vector<CheckResult> check_cor34(const MartingaleSequence& seq, std::span<const double> t_grid,
                                     std::span<const double> p_grid, const Tolerance& tol) {
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};
  const auto& f = seq.filtration();
  auto proto = base_record(TheoremId::COR34_TAIL, seq, 0.0);
  proto.residual = residual;
  proto.params = extract_two_sided_params(seq);
  require_two_sided_hypothesis(seq, proto.params);

  const auto inc = seq.increment();
  const auto abs_spec = spectral_decompose(abs_element(inc));
  auto out = over_grid(proto, t_grid, [&](CheckResult& r, double t) {
    r.lhs = tail_probability(abs_spec, t);
    r.rhs = bounds::cor34_tail_bound(t, r.params.sigma_sq, r.params.M);
  }, tol);

  // K^2 = sum ||E_{j-1}(dx_j^2)||, Mmax = max ||dx_j||.
  double k_sq = 0.0, m_max = 0.0;
  for (std::size_t j = 1; j <= seq.steps(); ++j) {
    const auto dx = seq.difference(j);
    k_sq += operator_norm(conditional_expectation(square(dx), f, j - 1));
    m_max = std::max(m_max, operator_norm(dx));
  }
  proto.theorem = TheoremId::COR34_LP;
  proto.aux["K"] = std::sqrt(k_sq);
  proto.aux["Mmax"] = m_max;
  auto lp = over_grid(proto, p_grid, [&](CheckResult& r, double p) {
    r.lhs = schatten_norm(inc, p);
    r.rhs = bounds::lp_norm_bound(p, std::sqrt(k_sq), m_max);
  }, tol);
  out.insert(out.end(), lp.begin(), lp.end());
  return out;
}

std::vector<CheckResult> check_bernstein_grid(const TensorFiltration& f,
                                              std::span<const HermitianElement> elements,
                                              std::span<const double> lambdas,
                                              const Tolerance& tol) {
  if (elements.empty()) throw ParameterError("Bernstein check needs at least one element");
  const auto seq = independent_sum(f, elements);
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};

  auto proto = base_record(TheoremId::BERNSTEIN, seq, 0.0);
  proto.residual = residual;
  proto.params.M = kMinNorm;
  for (const auto& a : elements) {
    const double bj_sq = trace_state(square(a));
    proto.params.b.push_back(std::sqrt(bj_sq));
    proto.params.b_total_sq += bj_sq;
    proto.params.M = std::max(proto.params.M, operator_norm(a));
  }
  // E_N(x_j^2) = tau(x_j^2) 1 <= b_j^2, and ||x_j|| <= M, by construction.
  const auto spec = spectral_decompose(seq.increment());
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    r.lhs = tail_probability(spec, lambda);
    r.rhs = bounds::bernstein_bound(lambda, r.params.b_total_sq, r.params.M);
  }, tol);
}

CheckResult check_bernstein(const TensorFiltration& f, std::span<const HermitianElement> elements,
                            double lambda, const Tolerance& tol) {
  return single(check_bernstein_grid(f, elements, std::span(&lambda, 1), tol));
}

std::vector<CheckResult> check_cor36_grid(const MartingaleSequence& seq,
                                          std::span<const double> lambdas, double M,
                                          const Tolerance& tol) {
  double residual = 0.0;
  if (auto bad = reject_invalid(seq, &residual)) return {*bad};
  auto proto = base_record(TheoremId::COR36, seq, 0.0);
  proto.residual = residual;
  proto.params = extract_two_sided_params(seq);
  proto.params.M = M;
  proto.params.a.assign(seq.steps(), 0.0);
  bounds::cor36_shifts(proto.params.step_max, M, proto.params.a);
  // dx_j <= M_j = a_j + M and -dx_j <= a_j + M, so the variance bound's hypotheses hold.
  require_two_sided_hypothesis(seq, proto.params);
  proto.aux["M"] = M;
  const auto spec = spectral_decompose(abs_element(seq.increment()));
  return over_grid(proto, lambdas, [&](CheckResult& r, double lambda) {
    r.lhs = tail_probability(spec, lambda);
    r.rhs = bounds::cor36_bound(lambda, r.params.sigma_sq, r.params.step_max, M);
  }, tol);
}

CheckResult check_cor36(const MartingaleSequence& seq, double lambda, double M,
                        const Tolerance& tol) {
  return single(check_cor36_grid(seq, std::span(&lambda, 1), M, tol));
}

}  // namespace ncaz
