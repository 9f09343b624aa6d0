#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "cutfem/config.hpp"

using namespace cutfem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.scenario == Scenario::PlaneWaveCavity);
  CHECK(c.order == 1);
  CHECK(c.cells == 24);
  CHECK(c.material1.rho == 1.0);
  CHECK(c.material1.lambda == 1.1429);
  CHECK(c.material1.mu == 1.0);
  CHECK(c.material2.rho == 1.1154);
  CHECK(c.material2.lambda == 2.6182);
  CHECK(c.material2.mu == 1.8);
  CHECK(c.end_time == 2.0);
  CHECK(c.safety == 0.2);
  CHECK(std::isnan(c.interface_x));
  CHECK(c.stabilize);
  CHECK(c.sweep_fractions.size() == 10);
  CHECK_FALSE(c.penalty.gamma_D.has_value());
}

TEST_CASE("values, comments and whitespace") {
  const RunConfig c = parse_config(
      "# a study\n"
      "  order = 2   # quadratic\n"
      "scenario=transmission\n"
      "\n"
      "lambda2 = 3.25\n"
      "gamma_M2 = 0.5\n"
      "stabilize = no\n"
      "snapshot_times = 0.5, 1, 2\n"
      "sweep_problem = interface\n");
  CHECK(c.order == 2);
  CHECK(c.scenario == Scenario::Transmission);
  CHECK(c.material2.lambda == 3.25);
  CHECK(c.penalty.gamma_M[1] == 0.5);
  CHECK_FALSE(c.penalty.gamma_M[0].has_value());
  CHECK_FALSE(c.stabilize);
  CHECK(c.snapshot_times == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(c.sweep_problem == SweepProblem::Interface);

  const StudyOptions o = c.study_options(3);
  CHECK(o.material2.lambda == 3.25);
  CHECK(o.threads == 3);
  CHECK_FALSE(o.quadrature_degree.has_value());
  CHECK(parse_config("quadrature_degree = 7").study_options().quadrature_degree == 7);
  CHECK_FALSE(c.sweep_options().stabilize);
}

TEST_CASE("errors carry the line number") {
  CHECK(error_of("order = 2\nfoo = 1\n") == "line 2: unknown key 'foo'");
  CHECK(error_of("order = 2\n\norder = 3\n") == "line 3: duplicate key 'order'");
  CHECK(error_of("omega = fast\n").rfind("line 1: expected a number", 0) == 0);
  CHECK(error_of("order = 1.5\n").rfind("line 1: expected an integer", 0) == 0);
  CHECK(error_of("cells\n") == "line 1: expected 'key = value'");
  CHECK(error_of("# x\nrho1 =\n") == "line 2: missing value for 'rho1'");
  CHECK(error_of("stabilize = maybe\n").rfind("line 1: expected a boolean", 0) == 0);
  CHECK(error_of("scenario = tsunami\n").rfind("line 1:", 0) == 0);
}

TEST_CASE("invalid values are rejected after parsing") {
  CHECK_THROWS_AS(parse_config("order = 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("omega = -1"), ConfigError);
  CHECK_THROWS_AS(parse_config("mu1 = 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("kappa1 = 1.5"), ConfigError);
  CHECK_THROWS_AS(parse_config("sweep_fractions = 0.1, 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("cells = 1"), ConfigError);
}

TEST_CASE("dump and parse round trip") {
  RunConfig c = parse_config(
      "scenario = ritz\norder = 3\ncells = 48\nmu2 = 1.7\ninterface_x = 0.123456789\n"
      "gamma_D = 40\nkappa1 = 0.25\ngamma_A1 = 0.75\nsweep_fractions = 0.5, 1e-9\n");
  const RunConfig d = parse_config(dump_config(c));
  CHECK(dump_config(d) == dump_config(c));
  CHECK(d.scenario == Scenario::StaticRitz);
  CHECK(d.order == 3);
  CHECK(d.cells == 48);
  CHECK(d.material2.mu == 1.7);
  CHECK(d.interface_x == 0.123456789);
  CHECK(*d.penalty.gamma_D == 40.0);
  CHECK(*d.penalty.kappa1 == 0.25);
  CHECK(*d.penalty.gamma_A[0] == 0.75);
  CHECK(d.sweep_fractions == std::vector<double>{0.5, 1e-9});
}

TEST_CASE("load_config reads files and prefixes the path") {
  const std::string path = "test_config_tmp.cfg";
  {
    std::ofstream out(path);
    out << "order = 2\nbogus = 1\n";
  }
  try {
    load_config(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == path + ": line 2: unknown key 'bogus'");
  }
  {
    std::ofstream out(path);
    out << "order = 2\n";
  }
  CHECK(load_config(path).order == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), ConfigError);
}
