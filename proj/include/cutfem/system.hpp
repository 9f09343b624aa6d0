#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "cutfem/discretization.hpp"

namespace cutfem {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Direct sparse Cholesky factorization of a symmetric positive definite matrix.
class SparseCholesky {
 public:
  /// Throws SingularSystemError when the matrix is not numerically positive definite.
  explicit SparseCholesky(const SparseMatrix& a, const char* what = "matrix");
  ~SparseCholesky();
  SparseCholesky(SparseCholesky&&) noexcept;
  SparseCholesky& operator=(SparseCholesky&&) noexcept;

  Vector solve(const Vector& b) const;
  int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

SparseMatrix assemble_mass(const Discretization& disc);
SparseMatrix assemble_stiffness(const Discretization& disc);

/// Boundary and body loads with all shape data precomputed, so that the
/// load vector can be re-evaluated cheaply at every Runge-Kutta stage.
class LoadAssembler {
 public:
  explicit LoadAssembler(const Discretization& disc);
  /// out = L(t); `out` has the global system size.
  void evaluate(double t, std::span<double> out) const;
  Vector evaluate(double t) const;
  bool empty() const { return entries_.empty(); }

 private:
  enum class Kind { Body, Neumann, Dirichlet };
  struct Entry {
    Kind kind;
    int domain;
    Point x;
    Vec2 n;
    double w;
    std::vector<int> dofs;
    std::vector<double> values;            // scalar shape values
    Eigen::Matrix<double, Eigen::Dynamic, 2> traction_t;  // (sigma(N) n)^T, Dirichlet only
  };
  std::vector<Entry> entries_;
  std::array<Material, 2> materials_;
  std::array<TimeField, 2> body_, neumann_, dirichlet_;
  double penalty_ = 0.0;
  int size_ = 0;
};

/// Displacement and velocity coefficients at time t.
struct State {
  Vector xi;
  Vector xi_dot;
  double t = 0.0;
};

/// M xi'' + A xi = L(t) for a discretized problem.
class SemiDiscreteSystem {
 public:
  explicit SemiDiscreteSystem(std::shared_ptr<const Discretization> disc);
  /// Wraps given matrices (used for small algebraic test systems).
  SemiDiscreteSystem(SparseMatrix mass, SparseMatrix stiffness,
                     std::function<void(double, std::span<double>)> load = {});

  int size() const { return static_cast<int>(m_.rows()); }
  const SparseMatrix& mass() const { return m_; }
  const SparseMatrix& stiffness() const { return a_; }
  const Discretization* discretization() const { return disc_.get(); }

  void load(double t, std::span<double> out) const;
  /// y = A x through the SIMD kernels.
  void apply_stiffness(std::span<const double> x, std::span<double> y) const;
  void apply_mass(std::span<const double> x, std::span<double> y) const;
  /// Factorizes M on first use; throws SingularSystemError if it is not SPD.
  const SparseCholesky& mass_solver() const;

 private:
  std::shared_ptr<const Discretization> disc_;
  SparseMatrix m_, a_;
  std::shared_ptr<LoadAssembler> loads_;
  std::function<void(double, std::span<double>)> custom_load_;
  mutable std::unique_ptr<SparseCholesky> m_factor_;
};

/// Field defined per domain (domain index 0 or 1).
using DomainField = std::function<Vec2(const Point&, int)>;

/// Weight of the projection right side. Density gives sum_i (rho_i u, v_i),
/// which makes the projection reproduce the discrete space for any rho;
/// Unit gives sum_i (u, v_i), which coincides with it when rho = 1.
enum class ProjectionWeight { Density, Unit };

/// Right side of the projection, integrated over the physical domains only.
Vector projection_rhs(const Discretization& disc, const DomainField& u,
                      ProjectionWeight weight = ProjectionWeight::Density);
/// Stabilized L2 projection: M x = projection_rhs(u).
Vector l2_project(const SemiDiscreteSystem& sys, const DomainField& u,
                  ProjectionWeight weight = ProjectionWeight::Density);

/// Static solve A x = L(t). Throws SingularSystemError without Dirichlet data.
Vector ritz_project(const Discretization& disc, double t = 0.0);

State set_initial_conditions(const SemiDiscreteSystem& sys, const DomainField& u0,
                             const DomainField& w0, double t0 = 0.0);

/// One classical RK4 step of (xi, xi_dot)' = (xi_dot, M^-1 (L(t) - A xi)),
/// with loads sampled at t, t + tau/2, t + tau.
State rk4_advance(const SemiDiscreteSystem& sys, const State& s, double tau);

/// Advances to t_end with equal steps no longer than tau. The callback, when
/// given, sees every accepted state.
State integrate(const SemiDiscreteSystem& sys, State s, double tau, double t_end,
                const std::function<void(const State&)>& on_step = {});

/// 0.5 (xi_dot^T M xi_dot + xi^T A xi)
double energy(const SemiDiscreteSystem& sys, const State& s);

/// tau = safety * h / p^2 / max c_p
double default_time_step(int p, double h, double max_cp, double safety = 0.2);

/// One "row col value" line per stored entry, 0-based.
void export_triplets(const SparseMatrix& a, std::ostream& os);

/// Symmetric part (A + A^T) / 2 with the union sparsity pattern.
SparseMatrix symmetrize(const SparseMatrix& a);

}  // namespace cutfem
