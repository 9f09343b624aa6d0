#include "cutfem/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace cutfem {

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::PlaneWaveCavity: return "planewave";
    case Scenario::Transmission: return "transmission";
    case Scenario::StaticRitz: return "ritz";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "planewave") return Scenario::PlaneWaveCavity;
  if (name == "transmission") return Scenario::Transmission;
  if (name == "ritz") return Scenario::StaticRitz;
  throw ConfigError("unknown scenario '" + name + "' (planewave, transmission, ritz)");
}

int cells_per_side(int level) {
  if (level < 0 || level > 8) throw ConfigError("refinement level out of range");
  return 12 << level;
}

namespace {

// Traction of the exact solution on the cavity wall, with the normal
// pointing out of Omega (into the hole).
TimeField cavity_traction(std::shared_ptr<const ExactSolution> u, std::shared_ptr<const LevelSet> phi) {
  return [u, phi](const Point& x, double t) {
    const Vec2 g = phi->gradient(x);
    return u->traction(x, t, -g / g.norm(), 0);
  };
}

ScenarioSetup cavity_setup(Scenario s, int order, int cells, const StudyOptions& opts,
                           std::shared_ptr<const ExactSolution> exact) {
  ScenarioSetup out{s, {}, exact, opts.material1.cp()};
  ProblemDescription& p = out.problem;
  p.mesh = BackgroundMesh::square(kStudyOrigin, kStudyLength, cells);
  p.order = order;
  p.phi = std::make_shared<CircleLevelSet>(Point(0.0, 0.0), opts.cavity_radius);
  p.kind = ProblemKind::Single;
  p.single_side = Side::Outside;
  p.immersed_bc = BoundaryKind::Neumann;
  p.penalty_overrides = opts.penalty;
  p.quadrature_degree = opts.quadrature_degree;
  DomainData& d = p.domains[0];
  d.material = opts.material1;
  d.dirichlet = [exact](const Point& x, double t) { return exact->displacement(x, t, 0); };
  d.neumann = cavity_traction(exact, p.phi);
  if (s == Scenario::StaticRitz)
    d.body_force = [exact](const Point& x, double t) { return exact->body_force(x, t, 0); };
  return out;
}

}  // namespace

ScenarioSetup make_scenario(Scenario s, int order, int cells, const StudyOptions& opts) {
  if (order < 1 || order > 5) throw ConfigError("element order must be in [1, 5]");
  if (cells < 1) throw ConfigError("mesh must have at least one cell per side");
  switch (s) {
    case Scenario::PlaneWaveCavity:
      return cavity_setup(s, order, cells, opts,
                          std::make_shared<PlaneWave>(opts.material1, opts.omega));
    case Scenario::StaticRitz:
      return cavity_setup(s, order, cells, opts,
                          std::make_shared<ManufacturedStatic>(opts.material1));
    case Scenario::Transmission: break;
  }
  const double h0 = kStudyLength / 12.0;
  const double xi = std::isnan(opts.interface_x) ? h0 * (std::sqrt(2.0) - 1.0) : opts.interface_x;
  auto exact = std::make_shared<TransmissionSolution>(opts.material1, opts.material2, opts.omega, xi);
  ScenarioSetup out{s, {}, exact, std::max(opts.material1.cp(), opts.material2.cp())};
  ProblemDescription& p = out.problem;
  p.mesh = BackgroundMesh::square(kStudyOrigin, kStudyLength, cells);
  p.order = order;
  // Domain 1 (phi > 0) lies left of the interface.
  p.phi = std::make_shared<HalfPlaneLevelSet>(xi, 0, -1);
  p.kind = ProblemKind::Interface;
  p.penalty_overrides = opts.penalty;
  p.quadrature_degree = opts.quadrature_degree;
  for (int d = 0; d < 2; ++d) {
    p.domains[d].material = d == 0 ? opts.material1 : opts.material2;
    p.domains[d].dirichlet = [exact, d](const Point& x, double t) { return exact->displacement(x, t, d); };
  }
  return out;
}

SolveResult solve_scenario(const ScenarioSetup& setup, const StudyOptions& opts) {
  auto disc = std::make_shared<const Discretization>(setup.problem);
  SolveResult r;
  r.dofs = disc->num_dofs();
  const ExactSolution& u = *setup.exact;
  if (setup.scenario == Scenario::StaticRitz) {
    const Vector x = ritz_project(*disc, 0.0);
    r.errors = error_norms(*disc, std::span<const double>(x.data(), x.size()), u, 0.0);
    return r;
  }
  SemiDiscreteSystem sys(disc);
  State s = set_initial_conditions(
      sys, [&](const Point& x, int d) { return u.displacement(x, 0.0, d); },
      [&](const Point& x, int d) { return u.velocity(x, 0.0, d); }, 0.0);
  const double tau = default_time_step(setup.problem.order, setup.problem.mesh.h, setup.max_cp,
                                       opts.safety);
  int steps = 0;
  s = integrate(sys, s, tau, opts.end_time, [&](const State&) { ++steps; });
  r.steps = steps;
  r.tau = opts.end_time / std::max(steps, 1);
  r.errors = error_norms(*disc, std::span<const double>(s.xi.data(), s.xi.size()), u, s.t);
  return r;
}

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<ConvergenceRecord> convergence_study(Scenario s, const std::vector<int>& orders,
                                                 int refinements, const StudyOptions& opts) {
  if (refinements < 1) throw ConfigError("at least one refinement level is required");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ConvergenceRecord> rows;
  for (int p : orders)
    for (int k = 0; k < refinements; ++k) {
      ConvergenceRecord r;
      r.scenario = scenario_name(s);
      r.p = p;
      r.h = kStudyLength / cells_per_side(k);
      rows.push_back(r);
    }
  // Finest (most expensive) configurations first for better load balance.
  std::vector<int> schedule(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) schedule[i] = static_cast<int>(i);
  std::stable_sort(schedule.begin(), schedule.end(), [&](int a, int b) {
    return rows[a].h * rows[b].p < rows[b].h * rows[a].p;
  });
  parallel_for(static_cast<int>(rows.size()), opts.threads, [&](int i) {
    ConvergenceRecord& r = rows[schedule[i]];
    try {
      const int level = static_cast<int>(std::lround(std::log2(kStudyLength / r.h / 12.0)));
      const SolveResult res = solve_scenario(make_scenario(s, r.p, cells_per_side(level), opts), opts);
      r.dofs = res.dofs;
      r.l2_error = res.errors.l2;
      r.h1_error = res.errors.h1_semi;
    } catch (const std::exception& e) {
      r.l2_error = r.h1_error = nan;
      r.failure = e.what();
    }
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].fitted_order = rows[i].fitted_order_h1 = nan;
    if (i > 0 && rows[i - 1].p == rows[i].p) {
      const double hr = std::log(rows[i - 1].h / rows[i].h);
      rows[i].fitted_order = std::log(rows[i - 1].l2_error / rows[i].l2_error) / hr;
      rows[i].fitted_order_h1 = std::log(rows[i - 1].h1_error / rows[i].h1_error) / hr;
    }
  }
  return rows;
}

std::string sweep_problem_name(SweepProblem k) {
  return k == SweepProblem::Single ? "single" : "interface";
}

SweepProblem parse_sweep_problem(const std::string& name) {
  if (name == "single") return SweepProblem::Single;
  if (name == "interface") return SweepProblem::Interface;
  throw ConfigError("unknown sweep problem '" + name + "' (single, interface)");
}

std::vector<double> default_sweep_fractions() {
  std::vector<double> f;
  for (int e = 1; e <= 10; ++e) f.push_back(std::pow(10.0, -e));
  return f;
}

ProblemDescription sweep_problem(SweepProblem kind, int order, double fraction,
                                 const CutSweepOptions& opts) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("cut fraction must lie in (0, 1)");
  ProblemDescription p;
  p.mesh = BackgroundMesh::square(0.0, 1.0, 9);
  const double h = p.mesh.h;
  p.order = order;
  p.penalty_overrides = opts.penalty;
  p.stabilize = opts.stabilize;
  p.quadrature_degree = opts.quadrature_degree;
  if (kind == SweepProblem::Single) {
    p.kind = ProblemKind::Single;
    p.phi = std::make_shared<HalfPlaneLevelSet>(8.0 * h + fraction * h, 0, 1);
    p.single_side = Side::Inside;
    p.immersed_bc = BoundaryKind::Neumann;
    p.domains[0].material = opts.material1;
  } else {
    p.kind = ProblemKind::Interface;
    p.phi = std::make_shared<HalfPlaneLevelSet>(4.0 * h + fraction * h, 0, -1);
    p.domains[0].material = opts.material1;
    p.domains[1].material = opts.material2;
  }
  return p;
}

std::vector<CutSweepRecord> cut_sweep(SweepProblem kind, int order,
                                      const std::vector<double>& fractions,
                                      const CutSweepOptions& opts) {
  std::vector<CutSweepRecord> rows(fractions.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  parallel_for(static_cast<int>(rows.size()), opts.threads, [&](int i) {
    CutSweepRecord& r = rows[i];
    r.problem = sweep_problem_name(kind);
    r.p = order;
    r.fraction = fractions[i];
    try {
      const Discretization disc(sweep_problem(kind, order, fractions[i], opts));
      const SparseMatrix m = assemble_mass(disc);
      const SparseMatrix a = assemble_stiffness(disc);
      r.dofs = disc.num_dofs();
      r.asym_mass = asymmetry(m);
      r.asym_stiffness = asymmetry(a);
      const auto wm = symmetric_eigenvalues(m);
      const auto wa = symmetric_eigenvalues(a);
      r.cond_mass = condition_number_from_spectrum(wm);
      r.cond_stiffness = condition_number_from_spectrum(wa);
      r.min_eig_mass = wm.front();
      r.min_eig_stiffness = wa.front();
      r.max_eig_stiffness = wa.back();
      try {
        r.cfl = cfl_number(m, a, disc.mesh().h);
      } catch (const SingularSystemError&) {
        r.cfl = nan;
      }
    } catch (const std::exception& e) {
      r.cond_mass = r.cond_stiffness = r.cfl = nan;
      r.failure = e.what();
    }
  });
  return rows;
}

double energy_drift(const ProblemDescription& problem, const DomainField& u0, double t_end,
                    double tau) {
  auto disc = std::make_shared<const Discretization>(problem);
  SemiDiscreteSystem sys(disc);
  State s = set_initial_conditions(sys, u0, [](const Point&, int) { return Vec2(0.0, 0.0); });
  const double e0 = energy(sys, s);
  if (!(e0 > 0.0)) throw Error("energy_drift: initial energy vanishes");
  s = integrate(sys, s, tau, t_end);
  return std::abs(energy(sys, s) - e0) / e0;
}

}  // namespace cutfem
