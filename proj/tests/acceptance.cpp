// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ncaz/bounds.hpp"
#include "ncaz/checkers.hpp"
#include "ncaz/cli.hpp"
#include "ncaz/martingale.hpp"
#include "ncaz/suite.hpp"
#include "oracles.hpp"

using namespace ncaz;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s [%d] %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void criterion_foundations() {
  SuiteConfig cfg;
  cfg.suites = {SuiteKind::Foundations};
  cfg.trials = 500;
  cfg.seed = 1;
  cfg.dim_choices = {{2, 2}, {2, 2, 2}, {3, 2}, {2, 3, 2}, {4, 2}};
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = run_suite(cfg);
  const double secs = seconds_since(t0);
  const auto s = summarize(records);

  std::size_t commuting = 0, commuting_exact = 0;
  double worst_gap = 0.0;
  for (const auto& r : records) {
    if (r.theorem != TheoremId::GT || r.label != "commuting") continue;
    ++commuting;
    const auto it = r.aux.find("equality_gap");
    if (it != r.aux.end() && it->second <= 1e-10) ++commuting_exact;
    if (it != r.aux.end()) worst_gap = std::max(worst_gap, it->second);
  }
  const bool covered = s.count_per_theorem.count("GT") && s.count_per_theorem.count("CHEB") &&
                       s.count_per_theorem.count("LPID") && s.count_per_theorem.count("CE_AXIOMS") &&
                       s.count_per_theorem.count("ORDER_INDEP");
  const bool pass = covered && s.violations == 0 && commuting == cfg.trials &&
                    commuting_exact == commuting && secs < 30.0;
  report(1, pass,
         "foundations: " + std::to_string(s.total) + " records, " + std::to_string(s.violations) +
             " violations, commuting GT exact " + std::to_string(commuting_exact) + "/" +
             std::to_string(commuting) + " (worst gap " + fmt("%.2e", worst_gap) + "), " +
             fmt("%.1f", secs) + " s");
}

void criterion_theorems() {
  SuiteConfig cfg;
  cfg.suites = {SuiteKind::Azuma, SuiteKind::Hoeffding, SuiteKind::McDiarmid, SuiteKind::Super,
                SuiteKind::Thm32,  SuiteKind::Mgf,       SuiteKind::Cor34,     SuiteKind::Bernstein,
                SuiteKind::Cor36};
  cfg.trials = 200;
  cfg.seed = 2;
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = run_suite(cfg);
  const double secs = seconds_since(t0);
  const auto s = summarize(records);

  std::size_t super_total = 0, super_degenerate = 0, errors = 0;
  for (const auto& r : records) {
    if (r.theorem == TheoremId::SUPER_AZUMA) {
      ++super_total;
      super_degenerate += r.degenerate ? 1 : 0;
    }
    if (r.label == "error" || r.theorem == TheoremId::MART_VALID) ++errors;
  }
  const bool pass = s.violations == 0 && errors == 0 && super_total > 0 &&
                    super_degenerate < super_total && secs < 120.0;
  std::string ratios;
  for (const auto& [k, v] : s.max_ratio_per_theorem) ratios += " " + k + "=" + fmt("%.3f", v);
  report(2, pass,
         "theorem suites: " + std::to_string(s.total) + " records, " + std::to_string(s.violations) +
             " violations, SUPER_AZUMA degenerate " + std::to_string(super_degenerate) + "/" +
             std::to_string(super_total) + ", " + fmt("%.1f", secs) + " s; max ratio" + ratios);
}

void criterion_chernoff() {
  std::vector<double> ts;
  for (int i = 1; i <= 14; ++i) ts.push_back(0.5 * i);
  std::size_t points = 0, exact = 0, dominated = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const TensorFiltration f(std::vector<std::size_t>(n, 2));
    const std::vector<std::vector<double>> rad(n, {1.0, -1.0});
    for (const auto& r : check_scalar_chernoff_grid(f, rad, ts)) {
      ++points;
      exact += r.lhs == oracle::enumerate_tail(rad, r.param, true) ? 1 : 0;
      dominated += r.holds && r.lhs <= bounds::scalar_chernoff_bound(r.param, n) ? 1 : 0;
    }
  }
  const TensorFiltration six(std::vector<std::size_t>(6, 2));
  const auto anchor = check_scalar_chernoff(six, std::vector<std::vector<double>>(6, {1.0, -1.0}), 4.0);
  const bool pass = exact == points && dominated == points && anchor.lhs == 7.0 / 32.0;
  report(3, pass,
         "Rademacher enumeration n<=6: exact " + std::to_string(exact) + "/" + std::to_string(points) +
             ", bound dominates " + std::to_string(dominated) + "/" + std::to_string(points) +
             ", n=6 t=4 lhs " + fmt("%.17g", anchor.lhs));
}

void criterion_bounds() {
  using V = std::vector<double>;
  struct Example {
    const char* name;
    double got;
    double want;
  };
  const std::vector<Example> examples{
      {"azuma(1,[1]) = 2e^-1/2", bounds::azuma_bound(1.0, V{1.0}), 2.0 * std::exp(-0.5)},
      {"azuma(2,[1,1]) = 2e^-1", bounds::azuma_bound(2.0, V{1.0, 1.0}), 2.0 * std::exp(-1.0)},
      {"chernoff(1,1) = 2e^-1/2", bounds::scalar_chernoff_bound(1.0, 1), 2.0 * std::exp(-0.5)},
      {"super(1,[1],0,0,3) = e^-1/4", bounds::supermartingale_bound(1.0, V{1.0}, V{0.0}, V{0.0}, 3.0, 0.7),
       std::exp(-0.25)},
      {"thm32(1,[1],[0],3) = 2e^-1/4", bounds::martingale_variance_bound(1.0, V{1.0}, V{0.0}, 3.0),
       2.0 * std::exp(-0.25)},
      {"mgf(1,1,1.5) = e", bounds::mgf_bound(1.0, 1.0, 1.5), std::exp(1.0)},
      {"cor34(1,1,3) = 2e^-1/4", bounds::cor34_tail_bound(1.0, V{1.0}, 3.0), 2.0 * std::exp(-0.25)},
      {"cor34(2,0,1) = 2e^-3", bounds::cor34_tail_bound(2.0, V{0.0}, 1.0), 2.0 * std::exp(-3.0)},
      {"lp(2,1,0) = sqrt6", bounds::lp_norm_bound(2.0, 1.0, 0.0), std::sqrt(6.0)},
      {"lp(3,0,1) = 3sqrt8", bounds::lp_norm_bound(3.0, 0.0, 1.0), 3.0 * std::sqrt(8.0)},
      {"bernstein(1,1,3) = e^-1/4", bounds::bernstein_bound(1.0, 1.0, 3.0), std::exp(-0.25)},
      {"bernstein(2,0,3) = e^-1", bounds::bernstein_bound(2.0, 0.0, 3.0), std::exp(-1.0)},
      {"cor36(1,[1],[2],1) = 2e^-3/13", bounds::cor36_bound(1.0, V{1.0}, V{2.0}, 1.0),
       2.0 * std::exp(-3.0 / 13.0)},
  };
  std::string failed;
  std::size_t ok = 0;
  for (const auto& e : examples) {
    if (std::abs(e.got - e.want) <= 1e-12 * std::abs(e.want)) {
      ++ok;
    } else {
      failed += std::string("; ") + e.name + " got " + fmt("%.17g", e.got);
    }
  }

  std::size_t red_total = 0, red_ok = 0;
  const auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::abs(b); };
  const V sigma{0.3, 1.1, 0.25};
  const V zeros(3, 0.0);
  for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    red_total += 2;
    red_ok += rel(bounds::cor34_tail_bound(t, sigma, 1.3), bounds::martingale_variance_bound(t, sigma, zeros, 1.3));
    for (std::size_t n = 1; n <= 6; ++n) {
      ++red_total;
      red_ok += rel(bounds::scalar_chernoff_bound(t, n), bounds::azuma_bound(t, V(n, 1.0)));
    }
    red_ok += rel(bounds::martingale_variance_bound(t, sigma, zeros, 1.3),
                  2.0 * bounds::supermartingale_bound(t, sigma, zeros, zeros, 1.3, 0.0));
  }

  std::size_t h_ok = 0;
  for (int i = 1; i <= 1000; ++i) {
    const double s = 3.0 * i / 1001.0;
    h_ok += bounds::h_eval(s) <= 1.0 / (1.0 - s / 3.0) ? 1 : 0;
  }
  const bool pass = ok == examples.size() && red_ok == red_total && h_ok == 1000;
  report(4, pass,
         "bound formulas: examples " + std::to_string(ok) + "/" + std::to_string(examples.size()) +
             ", reductions " + std::to_string(red_ok) + "/" + std::to_string(red_total) + ", h grid " +
             std::to_string(h_ok) + "/1000" + failed);
}

void criterion_minimality() {
  const TensorFiltration f({2});
  RandomStream rng(5, 0);
  const std::size_t instances = 100;
  std::size_t rank2 = 0, azuma_detected = 0, sigma_detected = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    auto sub = rng.substream(i);
    const auto d = random_centered_difference(f, 1, sub.uniform(0.25, 1.0), sub);
    const auto spec = spectral_decompose(d);
    rank2 += (std::abs(spec.eigenvalues(0)) > 1e-12 && std::abs(spec.eigenvalues(1)) > 1e-12) ? 1 : 0;
    const auto seq = martingale_from_differences(f, std::vector<HermitianElement>{d}, HermitianElement::zero(2));

    auto c = extract_azuma_params(seq).c;
    for (auto& cj : c) cj *= 0.5;
    azuma_detected += check_lipschitz_hypothesis(seq, c).holds ? 0 : 1;

    auto p = extract_variance_params(seq);
    for (auto& s : p.sigma_sq) s *= 0.25;  // sigma_j halved
    sigma_detected += check_variance_hypothesis(seq, p).holds ? 0 : 1;
  }
  const bool pass = rank2 == instances && azuma_detected >= 1 && sigma_detected >= 1;
  report(5, pass,
         "minimality probes on " + std::to_string(instances) + " rank-2 n=1 instances: halved c detected " +
             std::to_string(azuma_detected) + ", halved sigma detected " + std::to_string(sigma_detected));
}

std::string verify_report(const std::vector<std::string>& extra) {
  std::vector<std::string> args{"ncaz", "verify", "--suite", "all", "--trials", "50", "--seed", "7"};
  args.insert(args.end(), extra.begin(), extra.end());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

void criterion_determinism() {
  const auto a = verify_report({});
  const auto b = verify_report({});
  const auto c = verify_report({"--threads", "4"});
  const bool pass = a == b && a == c && a.rfind("0\n", 0) == 0 && a.size() > 1000;
  report(6, pass,
         "verify --suite all --trials 50 --seed 7: " + std::to_string(a.size()) +
             " bytes, repeat identical " + (a == b ? "yes" : "no") + ", 4 threads identical " +
             (a == c ? "yes" : "no"));
}

}  // namespace

int main() {
  criterion_foundations();
  criterion_theorems();
  criterion_chernoff();
  criterion_bounds();
  criterion_minimality();
  criterion_determinism();
  return failures;
}
