#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ncaz/algebra.hpp"
#include "ncaz/bounds.hpp"
#include "ncaz/cli.hpp"
#include "ncaz/condexp.hpp"
#include "ncaz/error.hpp"
#include "ncaz/report.hpp"
#include "ncaz/suite.hpp"

namespace py = pybind11;
using namespace ncaz;

namespace {

SuiteConfig make_config(const std::vector<std::string>& suites, std::size_t trials, std::uint64_t seed,
                        const std::optional<std::vector<std::vector<std::size_t>>>& dims,
                        const std::optional<std::vector<double>>& lambda_grid,
                        const std::optional<std::vector<double>>& p_grid, std::size_t threads) {
  SuiteConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.threads = threads;
  if (!suites.empty() && !(suites.size() == 1 && suites[0] == "all")) {
    cfg.suites.clear();
    for (const auto& s : suites) {
      const auto k = suite_from_string(s);
      if (!k) throw ParameterError("unknown suite '" + s + "'");
      cfg.suites.push_back(*k);
    }
  }
  if (dims) cfg.dim_choices = *dims;
  if (lambda_grid) cfg.lambda_grid = *lambda_grid;
  if (p_grid) cfg.p_grid = *p_grid;
  validate_config(cfg);
  return cfg;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"ncaz"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Noncommutative martingale bounds and their numerical verification";
  m.attr("__version__") = std::string(kToolVersion);

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  auto b = m.def_submodule("bounds", "closed-form scalar bounds");
  b.def("h", &bounds::h_eval, py::arg("s"));
  b.def("azuma", [](double l, const std::vector<double>& c) { return bounds::azuma_bound(l, c); },
        py::arg("lam"), py::arg("c"));
  b.def("hoeffding", [](double t, const std::vector<double>& c) { return bounds::hoeffding_bound(t, c); },
        py::arg("t"), py::arg("c"));
  b.def("scalar_chernoff", &bounds::scalar_chernoff_bound, py::arg("t"), py::arg("n"));
  b.def("supermartingale",
        [](double l, const std::vector<double>& s, const std::vector<double>& a, const std::vector<double>& bb,
           double M, double D) { return bounds::supermartingale_bound(l, s, a, bb, M, D); },
        py::arg("lam"), py::arg("sigma_sq"), py::arg("a"), py::arg("b"), py::arg("M"), py::arg("D"));
  b.def("martingale_variance",
        [](double l, const std::vector<double>& s, const std::vector<double>& a, double M) {
          return bounds::martingale_variance_bound(l, s, a, M);
        },
        py::arg("lam"), py::arg("sigma_sq"), py::arg("a"), py::arg("M"));
  b.def("mgf", &bounds::mgf_bound, py::arg("lam"), py::arg("K_sq"), py::arg("M"));
  b.def("cor34_tail",
        [](double t, const std::vector<double>& s, double M) { return bounds::cor34_tail_bound(t, s, M); },
        py::arg("t"), py::arg("sigma_sq"), py::arg("M"));
  b.def("lp_norm", &bounds::lp_norm_bound, py::arg("p"), py::arg("K"), py::arg("Mmax"));
  b.def("bernstein", &bounds::bernstein_bound, py::arg("lam"), py::arg("b_total_sq"), py::arg("M"));
  b.def("cor36",
        [](double l, const std::vector<double>& s, const std::vector<double>& mj, double M) {
          return bounds::cor36_bound(l, s, mj, M);
        },
        py::arg("lam"), py::arg("sigma_sq"), py::arg("M_steps"), py::arg("M"));

  m.def("eigenvalues", [](const Matrix& x) { return spectral_decompose(HermitianElement(x)).eigenvalues; },
        py::arg("x"), "Ascending eigenvalues of the self-adjoint part of x.");
  m.def("trace_state", [](const Matrix& x) { return trace_state(HermitianElement(x)); }, py::arg("x"));
  m.def("tail_probability", [](const Matrix& x, double t) { return tail_probability(HermitianElement(x), t); },
        py::arg("x"), py::arg("t"));
  m.def("schatten_norm", [](const Matrix& x, double p) { return schatten_norm(HermitianElement(x), p); },
        py::arg("x"), py::arg("p"));
  m.def("conditional_expectation",
        [](const Matrix& x, const std::vector<std::size_t>& dims, std::size_t level) {
          return conditional_expectation(x, TensorFiltration(dims), level);
        },
        py::arg("x"), py::arg("dims"), py::arg("level"));
  m.def("conditional_expectation_by_pinching",
        [](const Matrix& x, const std::vector<std::size_t>& dims, std::size_t level) {
          return conditional_expectation_by_pinching(x, TensorFiltration(dims), level);
        },
        py::arg("x"), py::arg("dims"), py::arg("level"));

  m.def("run_report",
        [](const std::vector<std::string>& suites, std::size_t trials, std::uint64_t seed,
           const std::optional<std::vector<std::vector<std::size_t>>>& dims,
           const std::optional<std::vector<double>>& lambda_grid,
           const std::optional<std::vector<double>>& p_grid, std::size_t threads) {
          const auto cfg = make_config(suites, trials, seed, dims, lambda_grid, p_grid, threads);
          std::vector<CheckResult> records;
          {
            py::gil_scoped_release release;
            records = run_suite(cfg);
          }
          return report_to_json(cfg, records);
        },
        py::arg("suites") = std::vector<std::string>{"all"}, py::arg("trials") = 1, py::arg("seed") = 0,
        py::arg("dims") = py::none(), py::arg("lambda_grid") = py::none(), py::arg("p_grid") = py::none(),
        py::arg("threads") = 1, "JSON report of a verification run.");

  m.def("cli", &cli, py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");
}
