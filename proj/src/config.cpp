#include "cutfem/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace cutfem {

StudyOptions RunConfig::study_options(int threads) const {
  StudyOptions o;
  o.material1 = material1;
  o.material2 = material2;
  o.omega = omega;
  o.end_time = end_time;
  o.safety = safety;
  o.cavity_radius = cavity_radius;
  o.interface_x = interface_x;
  o.penalty = penalty;
  if (quadrature_degree > 0) o.quadrature_degree = quadrature_degree;
  o.threads = threads;
  return o;
}

CutSweepOptions RunConfig::sweep_options(int threads) const {
  CutSweepOptions o;
  o.material1 = material1;
  o.material2 = material2;
  o.stabilize = stabilize;
  o.penalty = penalty;
  if (quadrature_degree > 0) o.quadrature_degree = quadrature_degree;
  o.threads = threads;
  return o;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& v) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  if (out.empty()) throw ConfigError("expected a comma-separated list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario", [](RunConfig& c, const std::string& v) { c.scenario = parse_scenario(v); }},
      {"order", [](RunConfig& c, const std::string& v) { c.order = to_int(v); }},
      {"cells", [](RunConfig& c, const std::string& v) { c.cells = to_int(v); }},
      {"rho1", [](RunConfig& c, const std::string& v) { c.material1.rho = to_double(v); }},
      {"lambda1", [](RunConfig& c, const std::string& v) { c.material1.lambda = to_double(v); }},
      {"mu1", [](RunConfig& c, const std::string& v) { c.material1.mu = to_double(v); }},
      {"rho2", [](RunConfig& c, const std::string& v) { c.material2.rho = to_double(v); }},
      {"lambda2", [](RunConfig& c, const std::string& v) { c.material2.lambda = to_double(v); }},
      {"mu2", [](RunConfig& c, const std::string& v) { c.material2.mu = to_double(v); }},
      {"omega", [](RunConfig& c, const std::string& v) { c.omega = to_double(v); }},
      {"end_time", [](RunConfig& c, const std::string& v) { c.end_time = to_double(v); }},
      {"safety", [](RunConfig& c, const std::string& v) { c.safety = to_double(v); }},
      {"cavity_radius", [](RunConfig& c, const std::string& v) { c.cavity_radius = to_double(v); }},
      {"interface_x", [](RunConfig& c, const std::string& v) { c.interface_x = to_double(v); }},
      {"quadrature_degree", [](RunConfig& c, const std::string& v) { c.quadrature_degree = to_int(v); }},
      {"gamma_D", [](RunConfig& c, const std::string& v) { c.penalty.gamma_D = to_double(v); }},
      {"gamma_I", [](RunConfig& c, const std::string& v) { c.penalty.gamma_I = to_double(v); }},
      {"gamma_M1", [](RunConfig& c, const std::string& v) { c.penalty.gamma_M[0] = to_double(v); }},
      {"gamma_M2", [](RunConfig& c, const std::string& v) { c.penalty.gamma_M[1] = to_double(v); }},
      {"gamma_A1", [](RunConfig& c, const std::string& v) { c.penalty.gamma_A[0] = to_double(v); }},
      {"gamma_A2", [](RunConfig& c, const std::string& v) { c.penalty.gamma_A[1] = to_double(v); }},
      {"kappa1", [](RunConfig& c, const std::string& v) { c.penalty.kappa1 = to_double(v); }},
      {"output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
      {"snapshot_times", [](RunConfig& c, const std::string& v) { c.snapshot_times = to_list(v); }},
      {"snapshot_resolution", [](RunConfig& c, const std::string& v) { c.snapshot_resolution = to_int(v); }},
      {"sweep_problem", [](RunConfig& c, const std::string& v) { c.sweep_problem = parse_sweep_problem(v); }},
      {"stabilize", [](RunConfig& c, const std::string& v) { c.stabilize = to_bool(v); }},
      {"sweep_fractions", [](RunConfig& c, const std::string& v) { c.sweep_fractions = to_list(v); }},
  };
  return table;
}

void validate(const RunConfig& c) {
  c.material1.validate();
  c.material2.validate();
  if (c.order < 1 || c.order > 5) throw ConfigError("order must be in [1, 5]");
  if (c.cells < 2) throw ConfigError("cells must be at least 2");
  if (!(c.omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(c.end_time >= 0.0)) throw ConfigError("end_time must be nonnegative");
  if (!(c.safety > 0.0)) throw ConfigError("safety must be positive");
  if (!(c.cavity_radius > 0.0)) throw ConfigError("cavity_radius must be positive");
  if (c.quadrature_degree < 0) throw ConfigError("quadrature_degree must be nonnegative");
  if (c.snapshot_resolution < 2) throw ConfigError("snapshot_resolution must be at least 2");
  if (c.penalty.kappa1 && !(*c.penalty.kappa1 > 0.0 && *c.penalty.kappa1 < 1.0))
    throw ConfigError("kappa1 must lie in (0, 1)");
  for (double f : c.sweep_fractions)
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("sweep fractions must lie in (0, 1)");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::set<std::string> seen;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      const auto it = setters().find(key);
      if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
      if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
      if (value.empty()) throw ConfigError("missing value for '" + key + "'");
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  auto list = [](const std::vector<double>& v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    return s.str();
  };
  os << "scenario = " << scenario_name(c.scenario) << "\n"
     << "order = " << c.order << "\n"
     << "cells = " << c.cells << "\n"
     << "rho1 = " << c.material1.rho << "\nlambda1 = " << c.material1.lambda
     << "\nmu1 = " << c.material1.mu << "\n"
     << "rho2 = " << c.material2.rho << "\nlambda2 = " << c.material2.lambda
     << "\nmu2 = " << c.material2.mu << "\n"
     << "omega = " << c.omega << "\nend_time = " << c.end_time << "\nsafety = " << c.safety << "\n"
     << "cavity_radius = " << c.cavity_radius << "\n";
  if (!std::isnan(c.interface_x)) os << "interface_x = " << c.interface_x << "\n";
  os << "quadrature_degree = " << c.quadrature_degree << "\n";
  if (c.penalty.gamma_D) os << "gamma_D = " << *c.penalty.gamma_D << "\n";
  if (c.penalty.gamma_I) os << "gamma_I = " << *c.penalty.gamma_I << "\n";
  for (int i = 0; i < 2; ++i) {
    if (c.penalty.gamma_M[i]) os << "gamma_M" << i + 1 << " = " << *c.penalty.gamma_M[i] << "\n";
    if (c.penalty.gamma_A[i]) os << "gamma_A" << i + 1 << " = " << *c.penalty.gamma_A[i] << "\n";
  }
  if (c.penalty.kappa1) os << "kappa1 = " << *c.penalty.kappa1 << "\n";
  os << "output_dir = " << c.output_dir << "\n"
     << "snapshot_times = " << list(c.snapshot_times) << "\n"
     << "snapshot_resolution = " << c.snapshot_resolution << "\n"
     << "sweep_problem = " << sweep_problem_name(c.sweep_problem) << "\n"
     << "stabilize = " << (c.stabilize ? "true" : "false") << "\n"
     << "sweep_fractions = " << list(c.sweep_fractions) << "\n";
  return os.str();
}

}  // namespace cutfem
