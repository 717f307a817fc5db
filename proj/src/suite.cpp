#include "ncaz/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>

#include "ncaz/algebra.hpp"
#include "ncaz/checkers.hpp"
#include "ncaz/condexp.hpp"
#include "ncaz/error.hpp"
#include "ncaz/martingale.hpp"
#include "ncaz/random.hpp"

namespace ncaz {

namespace {

struct SuiteName {
  SuiteKind kind;
  std::string_view name;
  TheoremId theorem;  // used to label records for failures that escape a checker
};

constexpr SuiteName kSuiteNames[] = {
    {SuiteKind::Azuma, "azuma", TheoremId::AZUMA},
    {SuiteKind::Hoeffding, "hoeffding", TheoremId::HOEFFDING},
    {SuiteKind::McDiarmid, "mcdiarmid", TheoremId::MCDIARMID},
    {SuiteKind::Chernoff, "chernoff", TheoremId::CHERNOFF},
    {SuiteKind::Super, "super", TheoremId::SUPER_AZUMA},
    {SuiteKind::Thm32, "thm32", TheoremId::THM32},
    {SuiteKind::Mgf, "mgf", TheoremId::MGF},
    {SuiteKind::Cor34, "cor34", TheoremId::COR34_TAIL},
    {SuiteKind::Bernstein, "bernstein", TheoremId::BERNSTEIN},
    {SuiteKind::Cor36, "cor36", TheoremId::COR36},
    {SuiteKind::Foundations, "foundations", TheoremId::CE_AXIOMS},
};

const SuiteName& entry(SuiteKind kind) {
  for (const auto& e : kSuiteNames) {
    if (e.kind == kind) return e;
  }
  throw ParameterError("unknown suite");
}

std::vector<std::vector<std::size_t>> usable_dims(const SuiteConfig& cfg) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& d : cfg.dim_choices) {
    if (d.size() >= cfg.step_range.first && d.size() <= cfg.step_range.second) out.push_back(d);
  }
  return out;
}

std::vector<HermitianElement> random_factor_elements(const TensorFiltration& f, RandomStream& rng) {
  std::vector<HermitianElement> out;
  for (std::size_t j = 1; j <= f.levels(); ++j) {
    RandomStream sub = rng.substream(j);
    const std::size_t dj = f.factor_dim(j);
    HermitianElement a = random_hermitian(dj, sub);
    a -= HermitianElement::scalar(dj, trace_state(a));
    const double norm = operator_norm(a);
    const double target = sub.uniform(0.25, 1.0);
    if (norm > 1e-12) a *= target / norm;
    out.push_back(a);
  }
  return out;
}

HermitianElement scaled_hermitian(std::size_t dim, double target, RandomStream& rng) {
  HermitianElement y = random_hermitian(dim, rng);
  const double norm = operator_norm(y);
  if (norm > 0.0) y *= target / norm;
  return y;
}

class Emitter {
 public:
  Emitter(const SuiteConfig& cfg, std::size_t trial) : cfg_(cfg), trial_(trial) {}

  void add(CheckResult r) {
    r.seed = cfg_.seed;
    r.trial = trial_;
    r.grid_index = next_index_[r.theorem]++;
    out_.push_back(std::move(r));
  }

  void add_all(std::vector<CheckResult> rs) {
    for (auto& r : rs) add(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  const SuiteConfig& cfg_;
  std::size_t trial_;
  std::map<TheoremId, std::size_t> next_index_;
  std::vector<CheckResult> out_;
};

void run_azuma(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng, Emitter& em) {
  const auto seq = random_martingale(f, 1.0, rng);
  em.add_all(check_azuma_grid(seq, cfg.lambda_grid, cfg.tolerance));
}

void run_hoeffding(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng,
                   Emitter& em) {
  const auto elements = random_factor_elements(f, rng);
  em.add_all(check_hoeffding_grid(f, elements, cfg.lambda_grid, cfg.tolerance));
}

void run_mcdiarmid(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng,
                   Emitter& em) {
  const double target = rng.uniform(0.5, 2.0);
  const auto y = scaled_hermitian(f.ambient_dim(), target, rng);
  em.add_all(check_mcdiarmid_grid(y, f, cfg.lambda_grid, cfg.tolerance));
}

void run_chernoff(const SuiteConfig& cfg, std::size_t n, std::size_t trial, RandomStream& rng,
                  Emitter& em) {
  const TensorFiltration f(std::vector<std::size_t>(n, 2));
  std::vector<std::vector<double>> values;
  for (std::size_t j = 0; j < n; ++j) {
    if (trial % 2 == 0) {
      values.push_back({1.0, -1.0});
    } else {
      const double u = 1.0 - rng.uniform();  // (0, 1]
      values.push_back({u, -u});
    }
  }
  em.add_all(check_scalar_chernoff_grid(f, values, cfg.lambda_grid, cfg.tolerance));
}

void run_super(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng, Emitter& em) {
  const std::size_t n = f.levels();
  const std::vector<double> zeros(n, 0.0);
  for (std::size_t k = 0; k < cfg.drift_scales.size(); ++k) {
    RandomStream sub = rng.substream(k);
    const auto seq = random_supermartingale(f, cfg.drift_scales[k], 1.0, sub);
    for (double bval : cfg.super_b_grid) {
      const std::vector<double> b(n, bval);
      for (auto& r : check_supermartingale_azuma_grid(seq, cfg.lambda_grid, zeros, b,
                                                      cfg.tolerance)) {
        r.aux["drift_scale"] = cfg.drift_scales[k];
        em.add(std::move(r));
      }
    }
    if (cfg.drift_scales[k] == 0.0) {
      for (auto& r : check_supermartingale_two_sided_grid(seq, cfg.lambda_grid, zeros, zeros,
                                                          cfg.tolerance)) {
        r.aux["drift_scale"] = 0.0;
        em.add(std::move(r));
      }
    }
  }
}

void run_thm32(const SuiteConfig& cfg, const TensorFiltration& f, std::size_t trial,
               RandomStream& rng, Emitter& em) {
  const auto seq = random_martingale(f, 1.0, rng);
  std::vector<double> a(f.levels(), 0.0);
  if (trial % 2 == 1) {
    for (auto& aj : a) aj = rng.uniform(0.0, 0.2);
  }
  em.add_all(check_thm32_grid(seq, cfg.lambda_grid, a, cfg.tolerance));
}

void run_mgf(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng, Emitter& em) {
  const auto seq = random_martingale(f, 1.0, rng);
  const double M = extract_two_sided_params(seq).M;
  std::vector<double> lambdas;
  for (double frac : cfg.mgf_fractions) lambdas.push_back(frac * 3.0 / M);
  auto records = check_mgf_grid(seq, lambdas, cfg.tolerance);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].theorem == TheoremId::MGF) records[i].aux["fraction"] = cfg.mgf_fractions[i];
    em.add(std::move(records[i]));
  }
}

void run_cor34(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng, Emitter& em) {
  const auto seq = random_martingale(f, 1.0, rng);
  em.add_all(check_cor34(seq, cfg.lambda_grid, cfg.p_grid, cfg.tolerance));
}

void run_bernstein(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng,
                   Emitter& em) {
  const auto elements = random_factor_elements(f, rng);
  em.add_all(check_bernstein_grid(f, elements, cfg.lambda_grid, cfg.tolerance));
}

void run_cor36(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng, Emitter& em) {
  const auto seq = random_martingale(f, 1.0, rng);
  std::vector<double> steps = extract_two_sided_params(seq).step_max;
  std::sort(steps.begin(), steps.end());
  const double M = std::max(1e-8, steps[steps.size() / 2]);
  em.add_all(check_cor36_grid(seq, cfg.lambda_grid, M, cfg.tolerance));
}

void run_foundations(const SuiteConfig& cfg, const TensorFiltration& f, RandomStream& rng,
                     Emitter& em) {
  const std::size_t d = f.ambient_dim();
  {
    RandomStream sub = rng.substream(1);
    const auto y1 = scaled_hermitian(d, sub.uniform(0.5, 2.0), sub);
    const auto y2 = scaled_hermitian(d, sub.uniform(0.5, 2.0), sub);
    auto r = check_golden_thompson(y1, y2, cfg.tolerance);
    r.label = "random";
    em.add(std::move(r));
  }
  {
    // commuting pair: two functions of one random Hermitian element
    RandomStream sub = rng.substream(2);
    const auto base = spectral_decompose(random_hermitian(d, sub));
    std::vector<double> e1(d), e2(d);
    for (std::size_t i = 0; i < d; ++i) {
      e1[i] = sub.uniform(-1.5, 1.5);
      e2[i] = sub.uniform(-1.5, 1.5);
    }
    const Matrix& u = base.eigenvectors;
    const auto diag = [&](const std::vector<double>& e) {
      RealVector v(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = e[i];
      return HermitianElement(u * v.cast<Complex>().asDiagonal() * u.adjoint());
    };
    auto r = check_golden_thompson(diag(e1), diag(e2), cfg.tolerance);
    r.label = "commuting";
    em.add(std::move(r));
  }
  {
    RandomStream sub = rng.substream(3);
    const auto x = scaled_hermitian(d, sub.uniform(0.5, 3.0), sub);
    for (double t : cfg.lambda_grid) em.add(check_exp_chebyshev(x, t, cfg.tolerance));
  }
  {
    RandomStream sub = rng.substream(4);
    auto x = random_positive(d, sub);
    x *= sub.uniform(0.5, 3.0);
    for (double p : cfg.p_grid) em.add(check_lp_integral_identity(x, p));
  }
  {
    RandomStream sub = rng.substream(5);
    em.add_all(check_ce_axioms(f, sub));
  }
  {
    RandomStream sub = rng.substream(6);
    em.add(verify_order_independence(f, cfg.order_samples, sub));
  }
}

std::uint64_t suite_tag(SuiteKind kind) { return static_cast<std::uint64_t>(kind) + 1; }

}  // namespace

std::string_view to_string(SuiteKind kind) { return entry(kind).name; }

std::optional<SuiteKind> suite_from_string(std::string_view name) {
  for (const auto& e : kSuiteNames) {
    if (e.name == name) return e.kind;
  }
  return std::nullopt;
}

std::vector<SuiteKind> all_suites() {
  std::vector<SuiteKind> out;
  for (const auto& e : kSuiteNames) out.push_back(e.kind);
  return out;
}

void validate_config(const SuiteConfig& cfg) {
  if (cfg.suites.empty()) throw ParameterError("no suite selected");
  if (cfg.trials == 0) throw ParameterError("trials must be at least 1");
  if (cfg.step_range.first == 0 || cfg.step_range.first > cfg.step_range.second) {
    throw ParameterError("step range must satisfy 1 <= lo <= hi");
  }
  for (const auto& d : cfg.dim_choices) {
    if (d.empty()) throw ParameterError("empty factor dimension list");
    std::size_t total = 1;
    for (std::size_t dj : d) {
      if (dj < 2) throw ParameterError("factor dimensions must be at least 2");
      total *= dj;
    }
    if (total > kDefaultMaxAmbientDim) {
      throw ParameterError("ambient dimension " + std::to_string(total) + " exceeds " +
                           std::to_string(kDefaultMaxAmbientDim));
    }
  }
  if (usable_dims(cfg).empty()) {
    throw ParameterError("no dimension choice has a step count inside the step range");
  }
  if (cfg.lambda_grid.empty()) throw ParameterError("lambda grid is empty");
  for (double l : cfg.lambda_grid) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ParameterError("lambda values must be positive");
  }
  for (double p : cfg.p_grid) {
    if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("p values must be finite and >= 2");
  }
  for (double fr : cfg.mgf_fractions) {
    if (!(fr > 0.0 && fr < 1.0)) throw ParameterError("MGF fractions must lie in (0, 1)");
  }
  for (double s : cfg.drift_scales) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("drift scales must be >= 0");
  }
  for (double b : cfg.super_b_grid) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw ParameterError("b values must be >= 0");
  }
  if (!(cfg.tolerance.rel >= 0.0) || !(cfg.tolerance.abs >= 0.0)) {
    throw ParameterError("tolerances must be nonnegative");
  }
}

std::vector<CheckResult> run_trial(const SuiteConfig& cfg, SuiteKind kind, std::size_t trial) {
  const auto dims_list = usable_dims(cfg);
  const auto& dims = dims_list[trial % dims_list.size()];
  RandomStream rng(cfg.seed, combine_tags(suite_tag(kind), trial));
  Emitter em(cfg, trial);

  const auto start = std::chrono::steady_clock::now();
  try {
    const TensorFiltration f(dims);
    switch (kind) {
      case SuiteKind::Azuma: run_azuma(cfg, f, rng, em); break;
      case SuiteKind::Hoeffding: run_hoeffding(cfg, f, rng, em); break;
      case SuiteKind::McDiarmid: run_mcdiarmid(cfg, f, rng, em); break;
      case SuiteKind::Chernoff: run_chernoff(cfg, dims.size(), trial, rng, em); break;
      case SuiteKind::Super: run_super(cfg, f, rng, em); break;
      case SuiteKind::Thm32: run_thm32(cfg, f, trial, rng, em); break;
      case SuiteKind::Mgf: run_mgf(cfg, f, rng, em); break;
      case SuiteKind::Cor34: run_cor34(cfg, f, rng, em); break;
      case SuiteKind::Bernstein: run_bernstein(cfg, f, rng, em); break;
      case SuiteKind::Cor36: run_cor36(cfg, f, rng, em); break;
      case SuiteKind::Foundations: run_foundations(cfg, f, rng, em); break;
    }
  } catch (const std::exception& e) {
    CheckResult r;
    r.theorem = entry(kind).theorem;
    r.label = "error";
    r.dims = dims;
    r.n_steps = dims.size();
    r.holds = false;
    r.note = e.what();
    em.add(std::move(r));
  }
  auto out = em.take();
  if (cfg.record_timing) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    for (auto& r : out) r.duration_ms = ms;
  }
  return out;
}

std::vector<CheckResult> run_suite(const SuiteConfig& cfg) {
  validate_config(cfg);
  struct Task {
    SuiteKind kind;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (SuiteKind kind : cfg.suites) {
    for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({kind, t});
  }

  std::vector<std::vector<CheckResult>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      slots[i] = run_trial(cfg, tasks[i].kind, tasks[i].trial);
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(cfg.threads, 1, tasks.size());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<CheckResult> out;
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.theorem, a.trial, a.grid_index) < std::tie(b.theorem, b.trial, b.grid_index);
  });
  return out;
}

SuiteSummary summarize(const std::vector<CheckResult>& results) {
  SuiteSummary s;
  for (const auto& r : results) {
    const std::string name(to_string(r.theorem));
    ++s.total;
    ++s.count_per_theorem[name];
    if (r.degenerate) {
      ++s.degenerate;
      ++s.degenerate_per_theorem[name];
      continue;
    }
    if (r.holds) {
      ++s.holds;
    } else {
      ++s.violations;
    }
    if (std::isfinite(r.ratio)) {
      auto [it, inserted] = s.max_ratio_per_theorem.try_emplace(name, r.ratio);
      if (!inserted) it->second = std::max(it->second, r.ratio);
    }
  }
  return s;
}

}  // namespace ncaz
