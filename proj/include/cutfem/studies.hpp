#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cutfem/analysis.hpp"
#include "cutfem/exact.hpp"
#include "cutfem/problem.hpp"

namespace cutfem {

/// Side length and origin of the square used by the wave studies.
inline constexpr double kStudyLength = 2.0 * 3.14159265358979323846;
inline constexpr double kStudyOrigin = -3.14159265358979323846;

enum class Scenario {
  PlaneWaveCavity,  // plane wave around a circular cavity with exact traction data
  Transmission,     // flat-interface transmission between two materials
  StaticRitz,       // static manufactured solution on the cavity domain
};

std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

struct StudyOptions {
  Material material1 = kSandstone;
  Material material2 = kGranite;
  double omega = 3.14159265358979323846;
  double end_time = 2.0;
  double safety = 0.2;
  double cavity_radius = 1.0;
  /// Interface position; NaN selects x = h0 (sqrt 2 - 1) with h0 the coarsest cell size.
  double interface_x = std::numeric_limits<double>::quiet_NaN();
  PenaltyOverrides penalty{};
  std::optional<int> quadrature_degree;
  int threads = 1;
};

/// A problem together with the closed-form solution it is meant to reproduce.
struct ScenarioSetup {
  Scenario scenario;
  ProblemDescription problem;
  std::shared_ptr<const ExactSolution> exact;
  double max_cp = 0.0;
};

/// Cells per side at refinement level k: 12 * 2^k.
int cells_per_side(int level);

ScenarioSetup make_scenario(Scenario s, int order, int cells, const StudyOptions& opts = {});

struct SolveResult {
  ErrorNorms errors;
  int dofs = 0;
  int steps = 0;
  double tau = 0.0;
};

/// Projects the initial data, integrates to the end time with RK4 and
/// measures the error there. Static scenarios are solved directly.
SolveResult solve_scenario(const ScenarioSetup& setup, const StudyOptions& opts = {});

struct ConvergenceRecord {
  std::string scenario;
  int p = 0;
  double h = 0.0;
  int dofs = 0;
  double l2_error = 0.0;
  double h1_error = 0.0;
  double fitted_order = 0.0;  // NaN on the coarsest level of each order
  double fitted_order_h1 = 0.0;
  std::string failure;        // non-empty when the solve threw
};

/// One row per (p, level), levels 0..refinements-1, ordered by p then h.
/// Failed configurations yield NaN errors instead of aborting the study.
std::vector<ConvergenceRecord> convergence_study(Scenario s, const std::vector<int>& orders,
                                                 int refinements, const StudyOptions& opts = {});

enum class SweepProblem { Single, Interface };
std::string sweep_problem_name(SweepProblem k);
SweepProblem parse_sweep_problem(const std::string& name);

struct CutSweepOptions {
  Material material1 = kSandstone;
  Material material2 = kGranite;
  bool stabilize = true;
  PenaltyOverrides penalty{};
  std::optional<int> quadrature_degree;
  int threads = 1;
};

/// 9 x 9 cell geometries of the cut-size sweep on the unit square.
/// Single: Omega = {x < 8h + f h}, Nitsche Dirichlet on the three aligned
/// sides, homogeneous Neumann on the cut side. Interface: x_I = 4h + f h,
/// domain 1 on the left, Dirichlet on the whole outer boundary.
ProblemDescription sweep_problem(SweepProblem kind, int order, double fraction,
                                 const CutSweepOptions& opts = {});

struct CutSweepRecord {
  std::string problem;
  int p = 0;
  double fraction = 0.0;
  double cond_mass = 0.0;
  double cond_stiffness = 0.0;
  double cfl = 0.0;
  double min_eig_mass = 0.0;
  double min_eig_stiffness = 0.0;
  double max_eig_stiffness = 0.0;
  double asym_mass = 0.0;
  double asym_stiffness = 0.0;
  int dofs = 0;
  std::string failure;
};

std::vector<CutSweepRecord> cut_sweep(SweepProblem kind, int order,
                                      const std::vector<double>& fractions,
                                      const CutSweepOptions& opts = {});

/// The ten fractions 1e-1 ... 1e-10.
std::vector<double> default_sweep_fractions();

/// Relative energy change |E(T) - E(0)| / E(0) of a problem with
/// homogeneous data, starting from projected initial displacement u0 and
/// zero velocity.
double energy_drift(const ProblemDescription& problem, const DomainField& u0, double t_end,
                    double tau);

/// Runs f(i) for i in [0, n) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

}  // namespace cutfem
