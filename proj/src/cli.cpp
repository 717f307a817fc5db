#include "ncaz/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "ncaz/bounds.hpp"
#include "ncaz/error.hpp"
#include "ncaz/report.hpp"
#include "ncaz/suite.hpp"

namespace ncaz {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

const std::vector<std::string> kScalarNames{"lambda", "t", "s", "n", "M", "D",
                                            "K2", "K", "Mmax", "p", "b2"};
const std::vector<std::string> kListNames{"c", "sigma2", "a", "b", "Mj"};

double need(const BoundArgs& args, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    auto it = args.scalars.find(n);
    if (it != args.scalars.end()) return it->second;
  }
  throw ParameterError(std::string("missing --") + *names.begin());
}

std::vector<double> need_list(const BoundArgs& args, const char* name) {
  auto it = args.lists.find(name);
  if (it == args.lists.end() || it->second.empty()) {
    throw ParameterError(std::string("missing --") + name);
  }
  return it->second;
}

std::vector<double> list_or_zeros(const BoundArgs& args, const char* name, std::size_t n) {
  auto it = args.lists.find(name);
  if (it == args.lists.end() || it->second.empty()) return std::vector<double>(n, 0.0);
  return it->second;
}

std::size_t need_count(const BoundArgs& args, const char* name) {
  const double v = need(args, {name});
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw ParameterError(std::string("--") + name + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw ParameterError("bad --dims entry '" + item + "'");
    }
    if (pos != item.size() || v < 0) throw ParameterError("bad --dims entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ParameterError("--dims is empty");
  return out;
}

std::vector<SuiteKind> parse_suites(const std::string& text) {
  if (text == "all") return all_suites();
  std::vector<SuiteKind> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") return all_suites();
    const auto k = suite_from_string(item);
    if (!k) throw ParameterError("unknown suite '" + item + "'");
    out.push_back(*k);
  }
  return out;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("NCAZ_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  std::size_t pos = 0;
  unsigned long long s = 0;
  try {
    s = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ParameterError(std::string("NCAZ_SEED is not an unsigned integer: ") + v);
  }
  if (pos != std::string_view(v).size()) {
    throw ParameterError(std::string("NCAZ_SEED is not an unsigned integer: ") + v);
  }
  return s;
}

struct VerifyOptions {
  std::string suite = "all";
  std::size_t trials = 200;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> dims;
  std::optional<std::size_t> steps;
  std::vector<double> lambda_grid;
  std::vector<double> p_grid;
  std::optional<double> tolerance;
  std::optional<std::string> report;
  std::string format = "json";
  std::size_t threads = 1;
  bool timing = false;
};

SuiteConfig build_config(const VerifyOptions& o) {
  SuiteConfig cfg;
  cfg.suites = parse_suites(o.suite);
  cfg.trials = o.trials;
  if (o.seed) {
    cfg.seed = *o.seed;
  } else if (auto s = env_seed()) {
    cfg.seed = *s;
  }
  if (o.dims) cfg.dim_choices = {parse_dims(*o.dims)};
  if (o.steps) {
    const std::size_t n = *o.steps;
    if (n == 0) throw ParameterError("--steps must be at least 1");
    cfg.step_range = {n, n};
    bool any = false;
    for (const auto& d : cfg.dim_choices) any = any || d.size() == n;
    if (!any) {
      if (o.dims) {
        throw ParameterError("--steps " + std::to_string(n) + " does not match --dims");
      }
      cfg.dim_choices = {std::vector<std::size_t>(n, 2)};
    }
  }
  if (!o.lambda_grid.empty()) cfg.lambda_grid = o.lambda_grid;
  if (!o.p_grid.empty()) cfg.p_grid = o.p_grid;
  if (o.tolerance) cfg.tolerance.rel = *o.tolerance;
  cfg.threads = o.threads;
  cfg.record_timing = o.timing;
  validate_config(cfg);
  return cfg;
}

void print_summary(const SuiteSummary& s, std::ostream& os) {
  os << "records " << s.total << "  holds " << s.holds << "  violations " << s.violations
     << "  degenerate " << s.degenerate << '\n';
  for (const auto& [name, count] : s.count_per_theorem) {
    os << "  " << name << ": " << count << " records";
    if (auto it = s.max_ratio_per_theorem.find(name); it != s.max_ratio_per_theorem.end()) {
      os << ", max ratio " << format_real(it->second);
    }
    if (auto it = s.degenerate_per_theorem.find(name); it != s.degenerate_per_theorem.end()) {
      os << ", degenerate " << it->second;
    }
    os << '\n';
  }
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  SuiteConfig cfg;
  try {
    cfg = build_config(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto records = run_suite(cfg);
  const std::string text =
      o.format == "csv" ? report_to_csv(records) : report_to_json(cfg, records);

  std::ostream* summary_out = &err;
  if (o.report) {
    std::ofstream file(*o.report, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *o.report << '\n';
      return kExitUsage;
    }
    file << text;
    summary_out = &out;
  } else {
    out << text;
  }
  const auto summary = summarize(records);
  print_summary(summary, *summary_out);

  std::size_t shown = 0;
  for (const auto& r : records) {
    if (!is_violation(r)) continue;
    if (shown++ == 10) {
      err << "  ...\n";
      break;
    }
    err << "violation: " << to_string(r.theorem) << " trial " << r.trial << " grid "
        << r.grid_index << " lhs " << format_real(r.lhs) << " rhs " << format_real(r.rhs)
        << (r.note.empty() ? "" : " (" + r.note + ")") << '\n';
  }
  return verify_exit_code(records);
}

struct BoundOptions {
  std::string name;
  std::map<std::string, std::optional<double>> scalars;
  std::map<std::string, std::vector<double>> lists;
  // sweep only
  std::string param;
  std::vector<double> grid;
};

void add_bound_options(CLI::App* sub, BoundOptions& o) {
  sub->add_option("bound", o.name, "Bound to evaluate")
      ->required()
      ->check(CLI::IsMember(bound_names()));
  for (const auto& n : kScalarNames) sub->add_option("--" + n, o.scalars[n]);
  for (const auto& n : kListNames) {
    sub->add_option("--" + n, o.lists[n], "comma-separated per-step values")->delimiter(',');
  }
}

BoundArgs collect(const BoundOptions& o) {
  BoundArgs args;
  for (const auto& [k, v] : o.scalars) {
    if (v) args.scalars[k] = *v;
  }
  for (const auto& [k, v] : o.lists) {
    if (!v.empty()) args.lists[k] = v;
  }
  return args;
}

int cmd_bound(const BoundOptions& o, std::ostream& out, std::ostream& err) {
  try {
    out << format17(evaluate_bound(o.name, collect(o))) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_sweep(const BoundOptions& o, std::ostream& out, std::ostream& err) {
  if (o.grid.empty()) {
    err << "error: --grid is empty\n";
    return kExitUsage;
  }
  if (std::find(kScalarNames.begin(), kScalarNames.end(), o.param) == kScalarNames.end()) {
    err << "error: cannot sweep over '" << o.param << "'\n";
    return kExitUsage;
  }
  BoundArgs args = collect(o);
  std::ostringstream rows;
  rows << o.param << ",bound,valid\n";
  for (double v : o.grid) {
    args.scalars[o.param] = v;
    rows << format_real(v) << ',';
    try {
      rows << format17(evaluate_bound(o.name, args)) << ",1\n";
    } catch (const RangeError&) {
      rows << "nan,0\n";
    } catch (const Error& e) {
      err << "error at " << o.param << " = " << format_real(v) << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  out << rows.str();
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names{"azuma", "hoeffding", "chernoff", "super",
                                              "super2", "thm32",     "mgf",      "cor34",
                                              "lp",     "bernstein", "cor36",    "h"};
  return names;
}

double evaluate_bound(const std::string& name, const BoundArgs& args) {
  if (name == "azuma") return bounds::azuma_bound(need(args, {"lambda", "t"}), need_list(args, "c"));
  if (name == "hoeffding") {
    return bounds::hoeffding_bound(need(args, {"t", "lambda"}), need_list(args, "c"));
  }
  if (name == "chernoff") {
    return bounds::scalar_chernoff_bound(need(args, {"t", "lambda"}), need_count(args, "n"));
  }
  if (name == "super" || name == "super2") {
    const auto sigma = need_list(args, "sigma2");
    const auto a = list_or_zeros(args, "a", sigma.size());
    const auto b = list_or_zeros(args, "b", sigma.size());
    const double D = args.scalars.count("D") ? args.scalars.at("D") : 0.0;
    const double lambda = need(args, {"lambda"});
    const double M = need(args, {"M"});
    const double v = name == "super" ? bounds::supermartingale_bound(lambda, sigma, a, b, M, D)
                                     : bounds::supermartingale_two_sided_bound(lambda, sigma, a, b,
                                                                               M, D);
    if (std::isnan(v)) throw RangeError("denominator is not positive");
    return v;
  }
  if (name == "thm32") {
    const auto sigma = need_list(args, "sigma2");
    return bounds::martingale_variance_bound(need(args, {"lambda"}), sigma,
                                             list_or_zeros(args, "a", sigma.size()),
                                             need(args, {"M"}));
  }
  if (name == "mgf") {
    return bounds::mgf_bound(need(args, {"lambda"}), need(args, {"K2"}), need(args, {"M"}));
  }
  if (name == "cor34") {
    return bounds::cor34_tail_bound(need(args, {"t", "lambda"}), need_list(args, "sigma2"),
                                    need(args, {"M"}));
  }
  if (name == "lp") {
    return bounds::lp_norm_bound(need(args, {"p"}), need(args, {"K"}), need(args, {"Mmax"}));
  }
  if (name == "bernstein") {
    return bounds::bernstein_bound(need(args, {"lambda"}), need(args, {"b2"}), need(args, {"M"}));
  }
  if (name == "cor36") {
    return bounds::cor36_bound(need(args, {"lambda"}), need_list(args, "sigma2"),
                               need_list(args, "Mj"), need(args, {"M"}));
  }
  if (name == "h") return bounds::h_eval(need(args, {"s"}));
  throw ParameterError("unknown bound '" + name + "'");
}

int verify_exit_code(const std::vector<CheckResult>& records) {
  for (const auto& r : records) {
    if (is_violation(r)) return kExitViolation;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noncommutative martingale concentration toolkit", "ncaz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run verification suites and write a report");
  verify->add_option("--suite", vo.suite,
                     "azuma|hoeffding|mcdiarmid|chernoff|super|thm32|mgf|cor34|bernstein|cor36|"
                     "foundations|all (comma-separated)");
  verify->add_option("--trials", vo.trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vo.seed, "Base seed (default: $NCAZ_SEED, else 0)");
  verify->add_option("--dims", vo.dims, "Factor dimensions, e.g. 2,2,2");
  verify->add_option("--steps", vo.steps, "Number of steps n");
  verify->add_option("--lambda-grid", vo.lambda_grid)->delimiter(',');
  verify->add_option("--p-grid", vo.p_grid)->delimiter(',');
  verify->add_option("--tolerance", vo.tolerance, "Relative acceptance tolerance");
  verify->add_option("--report", vo.report, "Report path (default: standard output)");
  verify->add_option("--format", vo.format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--threads", vo.threads)->check(CLI::PositiveNumber);
  verify->add_flag("--timing", vo.timing, "Record wall-clock time per trial");

  BoundOptions bo;
  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound");
  add_bound_options(bound, bo);

  BoundOptions so;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a bound over a parameter grid as CSV");
  add_bound_options(sweep, so);
  sweep->add_option("--param", so.param, "Swept parameter")->required();
  sweep->add_option("--grid", so.grid, "Comma-separated values")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (verify->parsed()) return cmd_verify(vo, out, err);
  if (bound->parsed()) return cmd_bound(bo, out, err);
  return cmd_sweep(so, out, err);
}

}  // namespace ncaz
