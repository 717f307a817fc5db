#include "ncaz/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ncaz/error.hpp"

namespace ncaz {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ordered_json real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from(const ordered_json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParameterError("not a real number: " + s);
  }
  if (!j.is_number()) throw ParameterError("expected a number, got " + j.dump());
  return j.get<double>();
}

ordered_json reals(const std::vector<double>& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(real(x));
  return out;
}

std::vector<double> reals_from(const ordered_json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real_from(x));
  return out;
}

ordered_json params_json(const BoundParams& p) {
  ordered_json j;
  j["c"] = reals(p.c);
  j["sigma_sq"] = reals(p.sigma_sq);
  j["a"] = reals(p.a);
  j["b"] = reals(p.b);
  j["M"] = real(p.M);
  j["D"] = real(p.D);
  j["K_sq"] = real(p.K_sq);
  j["b_total_sq"] = real(p.b_total_sq);
  j["level_max"] = reals(p.level_max);
  j["step_max"] = reals(p.step_max);
  return j;
}

BoundParams params_from(const ordered_json& j) {
  BoundParams p;
  p.c = reals_from(j.at("c"));
  p.sigma_sq = reals_from(j.at("sigma_sq"));
  p.a = reals_from(j.at("a"));
  p.b = reals_from(j.at("b"));
  p.M = real_from(j.at("M"));
  p.D = real_from(j.at("D"));
  p.K_sq = real_from(j.at("K_sq"));
  p.b_total_sq = real_from(j.at("b_total_sq"));
  p.level_max = reals_from(j.at("level_max"));
  p.step_max = reals_from(j.at("step_max"));
  return p;
}

ordered_json record_json(const CheckResult& r) {
  ordered_json j;
  j["theorem"] = std::string(to_string(r.theorem));
  j["label"] = r.label;
  j["seed"] = r.seed;
  j["trial"] = r.trial;
  j["grid_index"] = r.grid_index;
  j["dims"] = r.dims;
  j["n_steps"] = r.n_steps;
  j["param"] = real(r.param);
  j["lhs"] = real(r.lhs);
  j["rhs"] = real(r.rhs);
  j["ratio"] = real(r.ratio);
  j["holds"] = r.holds;
  j["degenerate"] = r.degenerate;
  j["note"] = r.note;
  j["residual"] = real(r.residual);
  j["params"] = params_json(r.params);
  ordered_json aux = ordered_json::object();
  for (const auto& [k, v] : r.aux) aux[k] = real(v);
  j["aux"] = std::move(aux);
  j["tool_version"] = std::string(kToolVersion);
  if (r.duration_ms) j["duration_ms"] = real(*r.duration_ms);
  return j;
}

CheckResult record_from(const ordered_json& j) {
  CheckResult r;
  const auto name = j.at("theorem").get<std::string>();
  const auto id = theorem_from_string(name);
  if (!id) throw ParameterError("unknown theorem id: " + name);
  r.theorem = *id;
  r.label = j.at("label").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trial = j.at("trial").get<std::uint64_t>();
  r.grid_index = j.at("grid_index").get<std::size_t>();
  r.dims = j.at("dims").get<std::vector<std::size_t>>();
  r.n_steps = j.at("n_steps").get<std::size_t>();
  r.param = real_from(j.at("param"));
  r.lhs = real_from(j.at("lhs"));
  r.rhs = real_from(j.at("rhs"));
  r.ratio = real_from(j.at("ratio"));
  r.holds = j.at("holds").get<bool>();
  r.degenerate = j.at("degenerate").get<bool>();
  r.note = j.at("note").get<std::string>();
  r.residual = real_from(j.at("residual"));
  r.params = params_from(j.at("params"));
  for (const auto& [k, v] : j.at("aux").items()) r.aux[k] = real_from(v);
  if (j.contains("duration_ms")) r.duration_ms = real_from(j.at("duration_ms"));
  return r;
}

ordered_json config_json(const SuiteConfig& cfg) {
  ordered_json j;
  ordered_json suites = ordered_json::array();
  for (auto k : cfg.suites) suites.push_back(std::string(to_string(k)));
  j["suites"] = std::move(suites);
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["dims"] = cfg.dim_choices;
  j["steps"] = {cfg.step_range.first, cfg.step_range.second};
  j["lambda_grid"] = reals(cfg.lambda_grid);
  j["p_grid"] = reals(cfg.p_grid);
  j["mgf_fractions"] = reals(cfg.mgf_fractions);
  j["drift_scales"] = reals(cfg.drift_scales);
  j["super_b_grid"] = reals(cfg.super_b_grid);
  j["order_samples"] = cfg.order_samples;
  j["tolerance"] = {{"rel", real(cfg.tolerance.rel)}, {"abs", real(cfg.tolerance.abs)}};
  j["timing"] = cfg.record_timing;
  return j;
}

ordered_json summary_json(const SuiteSummary& s) {
  ordered_json j;
  j["total"] = s.total;
  j["holds"] = s.holds;
  j["violations"] = s.violations;
  j["degenerate"] = s.degenerate;
  ordered_json ratios = ordered_json::object();
  for (const auto& [k, v] : s.max_ratio_per_theorem) ratios[k] = real(v);
  j["max_ratio_per_theorem"] = std::move(ratios);
  ordered_json counts = ordered_json::object();
  for (const auto& [k, v] : s.count_per_theorem) counts[k] = v;
  j["count_per_theorem"] = std::move(counts);
  ordered_json degen = ordered_json::object();
  for (const auto& [k, v] : s.degenerate_per_theorem) degen[k] = v;
  j["degenerate_per_theorem"] = std::move(degen);
  return j;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string pack(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string record_to_json(const CheckResult& r) { return record_json(r).dump(); }

CheckResult record_from_json(std::string_view text) {
  try {
    return record_from(ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed record: ") + e.what());
  }
}

std::string report_to_json(const SuiteConfig& cfg, const std::vector<CheckResult>& records) {
  ordered_json doc;
  doc["version"] = std::string(kToolVersion);
  doc["config"] = config_json(cfg);
  ordered_json recs = ordered_json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  doc["records"] = std::move(recs);
  doc["summary"] = summary_json(summarize(records));
  return doc.dump(1) + "\n";
}

std::vector<CheckResult> records_from_report(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    std::vector<CheckResult> out;
    for (const auto& r : doc.at("records")) out.push_back(record_from(r));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const std::vector<CheckResult>& records) {
  std::ostringstream os;
  const bool timed = !records.empty() && records.front().duration_ms.has_value();
  os << "theorem,label,seed,trial,grid_index,dims,n_steps,param,lhs,rhs,ratio,holds,degenerate,"
        "residual,note,params,aux,tool_version";
  if (timed) os << ",duration_ms";
  os << '\n';
  for (const auto& r : records) {
    std::string dims;
    for (std::size_t i = 0; i < r.dims.size(); ++i) {
      if (i) dims += 'x';
      dims += std::to_string(r.dims[i]);
    }
    const auto& p = r.params;
    std::string params = "c=" + pack(p.c) + ";sigma_sq=" + pack(p.sigma_sq) + ";a=" + pack(p.a) +
                         ";b=" + pack(p.b) + ";M=" + format_real(p.M) + ";D=" + format_real(p.D) +
                         ";K_sq=" + format_real(p.K_sq) + ";b_total_sq=" +
                         format_real(p.b_total_sq) + ";level_max=" + pack(p.level_max) +
                         ";step_max=" + pack(p.step_max);
    std::string aux;
    for (const auto& [k, v] : r.aux) {
      if (!aux.empty()) aux += ';';
      aux += k + "=" + format_real(v);
    }
    os << to_string(r.theorem) << ',' << csv_quote(r.label) << ',' << r.seed << ',' << r.trial
       << ',' << r.grid_index << ',' << dims << ',' << r.n_steps << ',' << format_real(r.param)
       << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ',' << format_real(r.ratio)
       << ',' << (r.holds ? 1 : 0) << ',' << (r.degenerate ? 1 : 0) << ','
       << format_real(r.residual) << ',' << csv_quote(r.note) << ',' << csv_quote(params) << ','
       << csv_quote(aux) << ',' << kToolVersion;
    if (timed) os << ',' << format_real(r.duration_ms.value_or(0.0));
    os << '\n';
  }
  return os.str();
}

}  // namespace ncaz
