// Command-line drivers for the convergence, cut-size and snapshot experiments.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cutfem/config.hpp"
#include "cutfem/kernels.hpp"
#include "cutfem/studies.hpp"
#include "cutfem/system.hpp"

namespace fs = std::filesystem;
using namespace cutfem;

namespace {

struct GlobalFlags {
  std::string config;
  std::string out;
  int threads = 1;
  bool deterministic = false;
  std::string isa = "auto";
};

RunConfig load(const GlobalFlags& g) {
  RunConfig cfg = g.config.empty() ? parse_config("") : load_config(g.config);
  if (!g.out.empty()) cfg.output_dir = g.out;
  return cfg;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  const fs::path path = fs::path(cfg.output_dir) / name;
  std::ofstream os(path);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << std::setprecision(12);
  return os;
}

std::vector<int> parse_orders(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("bad order list '" + list + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty order list");
  for (int p : out)
    if (p < 1 || p > 5) throw ConfigError("orders must be in [1, 5]");
  return out;
}

void header(std::ostream& os, const std::string& schema, const GlobalFlags& g) {
  os << "# cutfem " << schema << " v1 threads=" << g.threads
     << " deterministic=" << (g.deterministic ? 1 : 0) << " isa=" << kernels::isa_name(kernels::active_isa())
     << "\n";
}

int cmd_converge(const GlobalFlags& g, const std::string& scenario, const std::string& orders,
                 int refinements) {
  RunConfig cfg = load(g);
  if (!scenario.empty()) cfg.scenario = parse_scenario(scenario);
  const auto rows = convergence_study(cfg.scenario, parse_orders(orders), refinements,
                                      cfg.study_options(g.threads));
  std::ofstream os = open_output(cfg, "convergence.csv");
  header(os, "convergence", g);
  os << "scenario,p,h,dofs,l2_error,h1_error,fitted_order\n";
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.p << ',' << r.h << ',' << r.dofs << ',' << r.l2_error << ','
       << r.h1_error << ',' << r.fitted_order << '\n';
    if (!r.failure.empty())
      std::cerr << "warning: p=" << r.p << " h=" << r.h << " failed: " << r.failure << "\n";
  }
  return 0;
}

int cmd_cutsweep(const GlobalFlags& g, const std::string& problem, const std::string& orders,
                 bool no_stabilize, bool export_matrices) {
  RunConfig cfg = load(g);
  if (!problem.empty()) cfg.sweep_problem = parse_sweep_problem(problem);
  if (no_stabilize) cfg.stabilize = false;
  std::ofstream os = open_output(cfg, "cutsweep.csv");
  header(os, "cutsweep", g);
  os << "problem,p,hcut_over_h,cond_mass,cond_stiffness,cfl\n";
  for (int p : parse_orders(orders)) {
    const auto rows = cut_sweep(cfg.sweep_problem, p, cfg.sweep_fractions, cfg.sweep_options(g.threads));
    for (const auto& r : rows) {
      os << r.problem << ',' << r.p << ',' << r.fraction << ',' << r.cond_mass << ','
         << r.cond_stiffness << ',' << r.cfl << '\n';
      if (!r.failure.empty())
        std::cerr << "warning: p=" << r.p << " fraction=" << r.fraction << " failed: " << r.failure << "\n";
    }
    if (export_matrices) {
      for (double f : cfg.sweep_fractions) {
        const Discretization disc(sweep_problem(cfg.sweep_problem, p, f, cfg.sweep_options()));
        std::ostringstream tag;
        tag << sweep_problem_name(cfg.sweep_problem) << "_p" << p << "_f" << f;
        std::ofstream m = open_output(cfg, "mass_" + tag.str() + ".txt");
        export_triplets(assemble_mass(disc), m);
        std::ofstream a = open_output(cfg, "stiffness_" + tag.str() + ".txt");
        export_triplets(assemble_stiffness(disc), a);
      }
    }
  }
  return 0;
}

void write_vtk(const RunConfig& cfg, const Discretization& disc, const State& s, int index) {
  const BackgroundMesh& mesh = disc.mesh();
  const LevelSet& phi = *disc.problem().phi;
  const int n = cfg.snapshot_resolution;
  const double dx = (mesh.xmax() - mesh.origin.x()) / (n - 1);
  const double dy = (mesh.ymax() - mesh.origin.y()) / (n - 1);
  std::ostringstream name;
  name << "snapshot_" << std::setw(4) << std::setfill('0') << index << ".vtk";
  std::ofstream os = open_output(cfg, name.str());
  os << "# vtk DataFile Version 3.0\n"
     << "cutfem displacement magnitude t=" << s.t << "\nASCII\nDATASET STRUCTURED_POINTS\n"
     << "DIMENSIONS " << n << ' ' << n << " 1\n"
     << "ORIGIN " << mesh.origin.x() << ' ' << mesh.origin.y() << " 0\n"
     << "SPACING " << dx << ' ' << dy << " 1\n"
     << "POINT_DATA " << n * n << "\nSCALARS displacement_magnitude double 1\nLOOKUP_TABLE default\n";
  const std::span<const double> coeffs(s.xi.data(), s.xi.size());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point x(mesh.origin.x() + i * dx, mesh.origin.y() + j * dy);
      const double v = phi.value(x);
      int domain = -1;
      if (disc.problem().kind == ProblemKind::Interface)
        domain = v > 0.0 ? 0 : 1;
      else if ((disc.problem().single_side == Side::Inside) == (v <= 0.0))
        domain = 0;
      double mag = std::numeric_limits<double>::quiet_NaN();
      if (domain >= 0) {
        try {
          mag = evaluate_field(coeffs, disc.dofmap(domain), disc.basis(), x).value.norm();
        } catch (const Error&) {
        }
      }
      if (std::isnan(mag))
        os << "nan\n";
      else
        os << mag << '\n';
    }
  }
}

int cmd_run(const GlobalFlags& g) {
  const RunConfig cfg = load(g);
  const StudyOptions opts = cfg.study_options(g.threads);
  const ScenarioSetup setup = make_scenario(cfg.scenario, cfg.order, cfg.cells, opts);
  auto disc = std::make_shared<const Discretization>(setup.problem);
  std::vector<double> times = cfg.snapshot_times;
  std::sort(times.begin(), times.end());
  if (setup.scenario == Scenario::StaticRitz) {
    State s{ritz_project(*disc, 0.0), Vector::Zero(disc->num_dofs()), 0.0};
    write_vtk(cfg, *disc, s, 0);
    const auto e = error_norms(*disc, std::span<const double>(s.xi.data(), s.xi.size()), *setup.exact, 0.0);
    std::cout << "static solve: dofs=" << disc->num_dofs() << " l2_error=" << e.l2 << "\n";
    return 0;
  }
  const ExactSolution& u = *setup.exact;
  SemiDiscreteSystem sys(disc);
  State s = set_initial_conditions(
      sys, [&](const Point& x, int d) { return u.displacement(x, 0.0, d); },
      [&](const Point& x, int d) { return u.velocity(x, 0.0, d); });
  const double tau = default_time_step(cfg.order, setup.problem.mesh.h, setup.max_cp, cfg.safety);
  int index = 0;
  for (double t : times) {
    if (t < s.t) throw ConfigError("snapshot times must be nonnegative");
    s = integrate(sys, s, tau, t);
    write_vtk(cfg, *disc, s, index++);
    const auto e = error_norms(*disc, std::span<const double>(s.xi.data(), s.xi.size()), u, s.t);
    std::cout << "t=" << s.t << " dofs=" << disc->num_dofs() << " l2_error=" << e.l2
              << " h1_error=" << e.h1_semi << "\n";
  }
  return 0;
}

int cmd_quadtest(const GlobalFlags& g, const std::string& shape, const std::vector<double>& params,
                 int cells, double x0, double length, int degree, const std::string& side_name) {
  const RunConfig cfg = load(g);
  const auto phi = builtin_levelset(shape, params);
  if (side_name != "inside" && side_name != "outside") throw ConfigError("side must be inside or outside");
  const Side side = side_name == "inside" ? Side::Inside : Side::Outside;
  const BackgroundMesh mesh = BackgroundMesh::square(x0, length, cells);
  const auto loc = locate_cells(mesh, *phi);
  std::ofstream vol = open_output(cfg, "quad_volume.csv");
  std::ofstream sur = open_output(cfg, "quad_surface.csv");
  header(vol, "quad_volume", g);
  header(sur, "quad_surface", g);
  vol << "cell,x,y,weight\n";
  sur << "cell,x,y,weight,nx,ny\n";
  double area = 0.0, length_total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadratureRule r = cell_rule(mesh, c, loc[c], *phi, side, degree);
    for (std::size_t q = 0; q < r.size(); ++q)
      vol << c << ',' << r.points[q].x() << ',' << r.points[q].y() << ',' << r.weights[q] << '\n';
    area += r.measure();
    if (loc[c] == CellLocation::Cut) {
      const SurfaceQuadratureRule s = cut_cell_surface_rule(mesh, c, *phi, side, degree);
      for (std::size_t q = 0; q < s.size(); ++q)
        sur << c << ',' << s.points[q].x() << ',' << s.points[q].y() << ',' << s.weights[q] << ','
            << s.normals[q].x() << ',' << s.normals[q].y() << '\n';
      length_total += s.measure();
    }
  }
  std::cout << std::setprecision(15) << "area=" << area << " length=" << length_total << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut finite element solver for the elastic wave equation"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "Configuration file (key = value lines)");
  app.add_option("--out", g.out, "Output directory (overrides output_dir)");
  app.add_option("--threads", g.threads, "Worker threads across study configurations")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", g.deterministic, "Deterministic reductions (fixed configuration order)");
  app.add_option("--isa", g.isa, "Kernel instruction set: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::string scenario, orders = "1,2,3", problem;
  int refinements = 3;
  auto* converge = app.add_subcommand("converge", "Convergence study, writes convergence.csv");
  converge->add_option("--scenario", scenario, "planewave, transmission or ritz");
  converge->add_option("--orders", orders, "Comma-separated element orders");
  converge->add_option("--refinements", refinements, "Number of mesh levels (12 * 2^k cells per side)")
      ->check(CLI::Range(1, 6));

  bool no_stabilize = false, export_matrices = false;
  auto* sweep = app.add_subcommand("cutsweep", "Cut-size sweep on a 9x9 mesh, writes cutsweep.csv");
  sweep->add_option("--problem", problem, "single or interface");
  sweep->add_option("--orders", orders, "Comma-separated element orders");
  sweep->add_flag("--no-stabilize", no_stabilize, "Disable the ghost penalty");
  sweep->add_flag("--export-matrices", export_matrices, "Write M and A as row,col,value triplets");

  app.add_subcommand("run", "Time-domain run with VTK snapshots at snapshot_times");

  std::string shape = "circle", side = "inside";
  std::vector<double> params{0.0, 0.0, 1.0};
  int cells = 72, degree = 6;
  double x0 = -3.14159265358979323846, length = 2.0 * 3.14159265358979323846;
  auto* quad = app.add_subcommand("quadtest", "Dump cut-cell quadrature rules as CSV");
  quad->add_option("--shape", shape, "circle or half_plane");
  quad->add_option("--params", params, "Level-set parameters")->delimiter(',');
  quad->add_option("--cells", cells, "Cells per side")->check(CLI::PositiveNumber);
  quad->add_option("--origin", x0, "Lower-left corner coordinate");
  quad->add_option("--length", length, "Side length")->check(CLI::PositiveNumber);
  quad->add_option("--degree", degree, "Polynomial degree of the rules")->check(CLI::Range(0, 40));
  quad->add_option("--side", side, "inside (phi < 0) or outside");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g.isa == "scalar") kernels::set_isa(kernels::Isa::Scalar);
    if (g.isa == "avx2") kernels::set_isa(kernels::Isa::Avx2);
    if (*converge) return cmd_converge(g, scenario, orders, refinements);
    if (*sweep) return cmd_cutsweep(g, problem, orders, no_stabilize, export_matrices);
    if (app.got_subcommand("run")) return cmd_run(g);
    if (*quad) return cmd_quadtest(g, shape, params, cells, x0, length, degree, side);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
