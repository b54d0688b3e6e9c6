// whrh: batch front end. Exit codes: 0 ok, 1 selftest failure, 2 invalid
// configuration, 3 solver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "whrh/catalogue.hpp"
#include "whrh/expr.hpp"
#include "whrh/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace whrh;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raw option values as typed on the command line; merged over the config file.
struct RawOptions {
  std::string config;
  std::map<std::string, std::string> flags;
};

class Settings {
 public:
  Settings(const RawOptions& raw) : flags_(raw.flags) {
    if (raw.config.empty()) return;
    std::ifstream in(raw.config);
    if (!in) throw ConfigError("cannot open config file '" + raw.config + "'");
    try {
      file_ = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config file '" + raw.config + "' is not valid JSON: " + e.what());
    }
    if (!file_.is_object()) throw ConfigError("config file must hold a JSON object");
  }

  [[nodiscard]] std::optional<std::string> text(const std::string& key) const {
    if (auto it = flags_.find(key); it != flags_.end()) return it->second;
    if (file_.contains(key)) {
      const json& v = file_.at(key);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) {
        std::ostringstream s;
        s.precision(17);
        s << v.get<double>();
        return s.str();
      }
      if (v.is_array()) {
        std::string out;
        for (const json& e : v) out += (out.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
        return out;
      }
      throw ConfigError("config value '" + key + "' has an unsupported type");
    }
    return std::nullopt;
  }

  [[nodiscard]] std::optional<double> number(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    try {
      return eval_expression(*t);
    } catch (const ExpressionError& e) {
      throw ConfigError("--" + key + ": " + e.what());
    }
  }

  [[nodiscard]] double number_or(const std::string& key, double fallback) const {
    return number(key).value_or(fallback);
  }

  [[nodiscard]] double required(const std::string& key, const std::string& problem) const {
    const auto v = number(key);
    if (!v) throw ConfigError("problem '" + problem + "' requires --" + key);
    return *v;
  }

  [[nodiscard]] std::size_t count(const std::string& key, std::size_t fallback) const {
    const auto t = text(key);
    if (!t) return fallback;
    return parse_count(*t, key);
  }

  static std::size_t parse_count(const std::string& s, const std::string& key) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("--" + key + ": '" + s + "' is not an integer");
    }
    if (used != s.size() || v < 0) throw ConfigError("--" + key + ": '" + s + "' is not a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

 private:
  std::map<std::string, std::string> flags_;
  json file_ = json::object();
};

struct RunConfig {
  Formulation problem = Formulation::Sommerfeld;
  RationalMap map = RationalMap::four_to_one();
  std::string mapping = "4to1";
  std::size_t n = 129;
  double chi = std::numbers::pi / 4;
  PhysicalParams params;
  std::string out;
};

RunConfig read_config(const Settings& s) {
  RunConfig c;
  const std::string prob = s.text("problem").value_or("sommerfeld");
  try {
    c.problem = parse_formulation(prob);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--problem: ") + e.what());
  }
  c.mapping = s.text("mapping").value_or("4to1");
  if (c.mapping == "4to1") c.map = RationalMap::four_to_one();
  else if (c.mapping == "2to1") c.map = RationalMap::two_to_one();
  else throw ConfigError("--mapping must be 2to1 or 4to1, got '" + c.mapping + "'");
  c.n = s.count("n", 129);
  if (c.n < 8) throw ConfigError("--n must be at least 8");
  c.chi = s.number_or("chi", std::numbers::pi / 4);
  c.params.k = s.number_or("k", 1.0);
  switch (c.problem) {
    case Formulation::Sommerfeld:
      c.params.theta0 = s.number_or("theta0", std::numbers::pi / 5);
      break;
    case Formulation::SeniorScalar:
    case Formulation::SeniorMatrix:
      c.params.theta0 = s.number_or("theta0", 5 * std::numbers::pi / 6);
      c.params.S = s.required("S", prob);
      break;
    case Formulation::Hurd:
      c.params.theta0 = s.number_or("theta0", std::numbers::pi / 3);
      c.params.theta1 = s.required("theta1", prob);
      c.params.theta2 = s.required("theta2", prob);
      break;
  }
  c.out = s.text("out").value_or("");
  // run the builders once so parameter-range errors surface as configuration errors
  try {
    (void)build_problems(c.problem, c.params, c.map, c.chi);
    (void)build_grid(c.map, 8, c.chi);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

json split(const Eigen::VectorXcd& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", re}, {"im", im}};
}

json params_json(const RunConfig& c) {
  json p{{"k", c.params.k}, {"theta0", c.params.theta0}};
  if (c.problem == Formulation::SeniorMatrix || c.problem == Formulation::SeniorScalar) p["S"] = c.params.S;
  if (c.problem == Formulation::Hurd) {
    p["theta1"] = c.params.theta1;
    p["theta2"] = c.params.theta2;
  }
  return p;
}

void warn(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << "\n";
}

int cmd_solve(const Settings& s) {
  const RunConfig c = read_config(s);
  const CatalogueRun run = solve_catalogue(c.problem, c.params, c.map, c.n, c.chi);
  warn(run.warnings());
  json doc;
  doc["problem"] = to_string(c.problem);
  doc["mapping"] = c.mapping;
  doc["n"] = c.n;
  doc["chi"] = c.chi;
  doc["params"] = params_json(c);
  json parts = json::array();
  for (const RHSolution& sol : run.parts) {
    json part{{"name", sol.problem.info.name}, {"residual", sol.residual}, {"condition", sol.condition}};
    json comps = json::array();
    for (std::size_t i = 0; i < sol.m(); ++i) {
      comps.push_back({{"upper", sol.problem.info.plus_names[i]},
                       {"lower", sol.problem.info.minus_names[i]},
                       {"coefficients", split(sol.series[i].coeffs)},
                       {"density", split(sol.density.row(static_cast<Eigen::Index>(i)).transpose())}});
    }
    part["components"] = comps;
    parts.push_back(part);
  }
  doc["parts"] = parts;
  const Observed obs = run.observed();
  json x = json::array();
  for (double v : obs.grid.grid.x) x.push_back(v);
  json values = json::array();
  for (Eigen::Index i = 0; i < obs.values.rows(); ++i) {
    json f = split(obs.values.row(i).transpose());
    values.push_back({{"name", obs.names[static_cast<std::size_t>(i)]}, {"re", f["re"]}, {"im", f["im"]}});
  }
  doc["collocation"] = {{"x", x}, {"values", values}};
  doc["warnings"] = run.warnings();
  emit(c.out, doc.dump(2) + "\n");
  return 0;
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(Settings::parse_count(item, "n-list"));
  }
  if (out.empty()) throw ConfigError("--n-list is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 8) throw ConfigError("--n-list entries must be at least 8");
    if (i > 0 && out[i] <= out[i - 1]) throw ConfigError("--n-list must be strictly ascending");
  }
  return out;
}

int cmd_converge(const Settings& s) {
  const RunConfig c = read_config(s);
  const std::vector<std::size_t> ns = parse_list(s.text("n-list").value_or("17,33,65,129"));
  const std::string ref_text =
      s.text("reference").value_or(c.problem == Formulation::Sommerfeld ? "exact" : "self:257");
  Reference ref;
  if (ref_text == "exact") {
    if (c.problem != Formulation::Sommerfeld)
      throw ConfigError("--reference exact is only available for sommerfeld");
    ref.kind = ReferenceKind::Exact;
    const PhysicalParams p = c.params;
    ref.exact = [p](cplx a) { return sommerfeld_exact_values(p, a); };
  } else if (ref_text.rfind("self:", 0) == 0) {
    ref.kind = ReferenceKind::SelfHighRes;
    ref.n_ref = Settings::parse_count(ref_text.substr(5), "reference");
    if (ref.n_ref <= ns.back())
      throw ConfigError("--reference " + ref_text + " must exceed the largest n in --n-list");
  } else {
    throw ConfigError("--reference must be 'exact' or 'self:N', got '" + ref_text + "'");
  }
  const auto solve_at = [&c](std::size_t n) {
    return solve_catalogue(c.problem, c.params, c.map, n, c.chi).observed();
  };
  const auto records = convergence_sweep(solve_at, ns, ref);
  std::string csv = "n,e2,einf,ealpha2,reference\n";
  for (const auto& r : records)
    csv += std::to_string(r.n) + "," + fmt(r.e2) + "," + fmt(r.einf) + "," + fmt(r.ealpha2) + "," + ref.label() +
           "\n";
  emit(c.out, csv);
  return 0;
}

int cmd_directivity(const Settings& s) {
  const RunConfig c = read_config(s);
  const double lo = s.number_or("theta-min", 0.0);
  const double hi = s.number_or("theta-max", 2 * std::numbers::pi);
  const std::size_t samples = s.count("samples", 361);
  if (samples < 2) throw ConfigError("--samples must be at least 2");
  if (!(hi > lo)) throw ConfigError("--theta-max must exceed --theta-min");
  const std::string compare = s.text("compare").value_or("");
  if (!compare.empty() && compare != "exact") throw ConfigError("--compare accepts only 'exact'");
  if (compare == "exact" && c.problem != Formulation::Sommerfeld)
    throw ConfigError("--compare exact is only available for sommerfeld");

  std::vector<double> thetas(samples);
  for (std::size_t i = 0; i < samples; ++i)
    thetas[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
  const CatalogueRun run = solve_catalogue(c.problem, c.params, c.map, c.n, c.chi);
  warn(run.warnings());
  const DirectivityCurve curve = directivity(run.source(), thetas);
  std::string csv = "theta,re_D,im_D,abs_D,flag";
  if (!compare.empty()) csv += ",abs_D_exact,abs_err";
  csv += "\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const cplx d = curve.values[i];
    csv += fmt(thetas[i]) + "," + fmt(d.real()) + "," + fmt(d.imag()) + "," + fmt(std::abs(d)) + "," +
           std::to_string(static_cast<int>(curve.flags[i]));
    if (!compare.empty()) {
      double ex = std::numeric_limits<double>::quiet_NaN();
      try {
        ex = std::abs(sommerfeld_directivity_exact(c.params, thetas[i]));
      } catch (const std::domain_error&) {
      }
      csv += "," + fmt(ex) + "," + fmt(std::abs(std::abs(d) - ex));
    }
    csv += "\n";
  }
  emit(c.out, csv);
  return 0;
}

int cmd_selftest(double perturb) {
  bool ok = true;
  for (const auto& r : verify::run_all(perturb)) {
    std::printf("%s %-18s worst=%.3e tol=%.1e %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst,
                r.tolerance, r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

void add_common(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--config", raw.config, "JSON file of option values (flags take precedence)");
  for (const char* key : {"problem", "mapping", "n", "chi", "k", "theta0", "S", "theta1", "theta2", "out"}) {
    const std::string name = std::string("--") + key;
    sub->add_option_function<std::string>(name, [&raw, key](const std::string& v) { raw.flags[key] = v; });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Wiener-Hopf / Riemann-Hilbert solver for half-plane diffraction"};
  app.require_subcommand(1);
  RawOptions solve_raw, conv_raw, dir_raw;
  double perturb = 0.0;

  auto* solve_cmd = app.add_subcommand("solve", "solve one problem and write a JSON document");
  add_common(solve_cmd, solve_raw);
  auto* conv_cmd = app.add_subcommand("converge", "convergence table as CSV");
  add_common(conv_cmd, conv_raw);
  for (const char* key : {"n-list", "reference"})
    conv_cmd->add_option_function<std::string>(std::string("--") + key,
                                               [&conv_raw, key](const std::string& v) { conv_raw.flags[key] = v; });
  auto* dir_cmd = app.add_subcommand("directivity", "far-field directivity curve as CSV");
  add_common(dir_cmd, dir_raw);
  for (const char* key : {"theta-min", "theta-max", "samples", "compare"})
    dir_cmd->add_option_function<std::string>(std::string("--") + key,
                                              [&dir_raw, key](const std::string& v) { dir_raw.flags[key] = v; });
  auto* self_cmd = app.add_subcommand("selftest", "run the built-in identity and oracle suites");
  self_cmd->add_option("--perturb-plemelj", perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(Settings(solve_raw));
    if (*conv_cmd) return cmd_converge(Settings(conv_raw));
    if (*dir_cmd) return cmd_directivity(Settings(dir_raw));
    if (*self_cmd) return cmd_selftest(perturb);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
