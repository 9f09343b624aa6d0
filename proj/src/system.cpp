#include "cutfem/system.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/CholmodSupport>

#include "cutfem/forms.hpp"
#include "cutfem/kernels.hpp"

namespace cutfem {

struct SparseCholesky::Impl {
  Eigen::CholmodSupernodalLLT<SparseMatrix, Eigen::Lower> llt;
};

SparseCholesky::SparseCholesky(const SparseMatrix& a, const char* what)
    : impl_(std::make_unique<Impl>()), n_(static_cast<int>(a.rows())) {
  impl_->llt.cholmod().print = 0;  // failures are reported through the exception
  impl_->llt.compute(a);
  if (impl_->llt.info() != Eigen::Success)
    throw SingularSystemError(std::string("factorization failed: ") + what +
                              " is not positive definite");
}

SparseCholesky::~SparseCholesky() = default;
SparseCholesky::SparseCholesky(SparseCholesky&&) noexcept = default;
SparseCholesky& SparseCholesky::operator=(SparseCholesky&&) noexcept = default;

Vector SparseCholesky::solve(const Vector& b) const { return impl_->llt.solve(b); }

SparseMatrix symmetrize(const SparseMatrix& a) {
  SparseMatrix at = a.transpose();
  SparseMatrix s = 0.5 * (a + at);
  s.makeCompressed();
  return s;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void scatter(Triplets& t, const std::vector<int>& rows, const LocalMatrix& k, double scale = 1.0) {
  const int n = static_cast<int>(rows.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double v = k(i, j);
      if (v != 0.0) t.emplace_back(rows[i], rows[j], scale * v);
    }
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

SparseMatrix finish(const Triplets& t, int n) {
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return symmetrize(m);
}

void add_ghost_penalty(const Discretization& disc, int d, double scale, Triplets& t) {
  if (scale == 0.0) return;
  const auto& faces = disc.ghost_faces(d);
  if (faces.empty()) return;
  const BackgroundMesh& mesh = disc.mesh();
  // The local matrix depends only on the face orientation.
  const std::array<LocalMatrix, 2> local = {
      forms::ghost_penalty(disc.basis(), mesh, {0, 1, 0}),
      forms::ghost_penalty(disc.basis(), mesh, {0, mesh.nx, 1})};
  const DofMap& map = disc.dofmap(d);
  for (const InteriorFace& f : faces) {
    scatter(t, concat(map.cell_dofs(f.minus), map.cell_dofs(f.plus)), local[f.axis], scale);
  }
}

}  // namespace

SparseMatrix assemble_mass(const Discretization& disc) {
  Triplets t;
  for (int d = 0; d < disc.num_domains(); ++d) {
    const DofMap& map = disc.dofmap(d);
    const double rho = disc.material(d).rho;
    for (const CellVolumeRule& r : disc.volume_rules(d)) {
      if (r.rule.empty()) continue;
      scatter(t, map.cell_dofs(r.cell), forms::mass(disc.basis(), disc.mesh(), r.cell, r.rule, rho));
    }
    add_ghost_penalty(disc, d, disc.penalty().gamma_M[d], t);
  }
  return finish(t, disc.num_dofs());
}

SparseMatrix assemble_stiffness(const Discretization& disc) {
  Triplets t;
  const PenaltyConfig& pen = disc.penalty();
  const double h = disc.mesh().h;
  const ElementBasis& basis = disc.basis();
  const BackgroundMesh& mesh = disc.mesh();
  for (int d = 0; d < disc.num_domains(); ++d) {
    const DofMap& map = disc.dofmap(d);
    const Material& m = disc.material(d);
    for (const CellVolumeRule& r : disc.volume_rules(d)) {
      if (r.rule.empty()) continue;
      scatter(t, map.cell_dofs(r.cell), forms::bulk(basis, mesh, r.cell, r.rule, m));
    }
    for (const CellSurfaceRule& r : disc.outer_rules(d)) {
      scatter(t, map.cell_dofs(r.cell),
              forms::nitsche_dirichlet(basis, mesh, r.cell, r.rule, m, pen.gamma_D));
    }
    add_ghost_penalty(disc, d, pen.gamma_A[d] / (h * h), t);
  }
  const ProblemDescription& prob = disc.problem();
  if (prob.kind == ProblemKind::Single && prob.immersed_bc == BoundaryKind::Dirichlet) {
    for (const CellSurfaceRule& r : disc.immersed_rules()) {
      scatter(t, disc.dofmap(0).cell_dofs(r.cell),
              forms::nitsche_dirichlet(basis, mesh, r.cell, r.rule, disc.material(0), pen.gamma_D));
    }
  }
  if (prob.kind == ProblemKind::Interface) {
    for (const CellSurfaceRule& r : disc.interface_rules()) {
      const LocalMatrix k = forms::interface(basis, mesh, r.cell, r.rule, disc.material(0),
                                             disc.material(1), pen.kappa[0], pen.kappa[1],
                                             pen.gamma_I);
      scatter(t, concat(disc.dofmap(0).cell_dofs(r.cell), disc.dofmap(1).cell_dofs(r.cell)), k);
    }
  }
  return finish(t, disc.num_dofs());
}

LoadAssembler::LoadAssembler(const Discretization& disc) : size_(disc.num_dofs()) {
  const ProblemDescription& prob = disc.problem();
  const ElementBasis& basis = disc.basis();
  const BackgroundMesh& mesh = disc.mesh();
  penalty_ = disc.penalty().gamma_D / mesh.h;
  for (int d = 0; d < disc.num_domains(); ++d) {
    materials_[d] = disc.material(d);
    body_[d] = prob.domains[d].body_force;
    neumann_[d] = prob.domains[d].neumann;
    dirichlet_[d] = prob.domains[d].dirichlet;
  }
  ShapeValues sv;
  auto add_entry = [&](Kind kind, int d, int cell, const Point& x, const Vec2& n, double w) {
    basis.shape_eval(mesh.to_reference(cell, x), sv);
    Entry e{kind, d, x, n, w, disc.dofmap(d).cell_dofs(cell), sv.value, {}};
    if (kind == Kind::Dirichlet)
      e.traction_t = forms::traction_operator(sv, materials_[d], n).transpose();
    entries_.push_back(std::move(e));
  };
  for (int d = 0; d < disc.num_domains(); ++d) {
    if (body_[d])
      for (const CellVolumeRule& r : disc.volume_rules(d))
        for (std::size_t q = 0; q < r.rule.size(); ++q)
          add_entry(Kind::Body, d, r.cell, r.rule.points[q], Vec2::Zero(), r.rule.weights[q]);
    if (dirichlet_[d])
      for (const CellSurfaceRule& r : disc.outer_rules(d))
        for (std::size_t q = 0; q < r.rule.size(); ++q)
          add_entry(Kind::Dirichlet, d, r.cell, r.rule.points[q], r.rule.normals[q], r.rule.weights[q]);
  }
  if (prob.kind == ProblemKind::Single) {
    const bool dir = prob.immersed_bc == BoundaryKind::Dirichlet;
    if ((dir && dirichlet_[0]) || (!dir && neumann_[0]))
      for (const CellSurfaceRule& r : disc.immersed_rules())
        for (std::size_t q = 0; q < r.rule.size(); ++q)
          add_entry(dir ? Kind::Dirichlet : Kind::Neumann, 0, r.cell, r.rule.points[q],
                    r.rule.normals[q], r.rule.weights[q]);
  }
}

void LoadAssembler::evaluate(double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const Entry& e : entries_) {
    const Material& m = materials_[e.domain];
    const std::size_t nn = e.values.size();
    switch (e.kind) {
      case Kind::Body:
      case Kind::Neumann: {
        const Vec2 g = e.kind == Kind::Body ? body_[e.domain](e.x, t) : neumann_[e.domain](e.x, t);
        for (std::size_t j = 0; j < nn; ++j) {
          out[e.dofs[2 * j]] += e.w * e.values[j] * g.x();
          out[e.dofs[2 * j + 1]] += e.w * e.values[j] * g.y();
        }
        break;
      }
      case Kind::Dirichlet: {
        const Vec2 g = dirichlet_[e.domain](e.x, t);
        const double gn = g.dot(e.n);
        const Vec2 pen = penalty_ * (2.0 * m.mu * g + m.lambda * gn * e.n);
        for (std::size_t j = 0; j < nn; ++j) {
          for (int c = 0; c < 2; ++c) {
            const int l = static_cast<int>(2 * j) + c;
            out[e.dofs[l]] += e.w * (e.values[j] * pen[c] - e.traction_t.row(l).dot(g));
          }
        }
        break;
      }
    }
  }
}

Vector LoadAssembler::evaluate(double t) const {
  Vector v(size_);
  evaluate(t, {v.data(), static_cast<std::size_t>(v.size())});
  return v;
}

SemiDiscreteSystem::SemiDiscreteSystem(std::shared_ptr<const Discretization> disc)
    : disc_(std::move(disc)),
      m_(assemble_mass(*disc_)),
      a_(assemble_stiffness(*disc_)),
      loads_(std::make_shared<LoadAssembler>(*disc_)) {}

SemiDiscreteSystem::SemiDiscreteSystem(SparseMatrix mass, SparseMatrix stiffness,
                                       std::function<void(double, std::span<double>)> load)
    : m_(symmetrize(mass)), a_(symmetrize(stiffness)), custom_load_(std::move(load)) {}

void SemiDiscreteSystem::load(double t, std::span<double> out) const {
  if (loads_) return loads_->evaluate(t, out);
  if (custom_load_) return custom_load_(t, out);
  std::fill(out.begin(), out.end(), 0.0);
}

namespace {

// Column-major storage of a symmetric matrix doubles as its CSR form.
kernels::CsrView csr_view(const SparseMatrix& a) {
  return {static_cast<int>(a.cols()), a.outerIndexPtr(), a.innerIndexPtr(), a.valuePtr()};
}

}  // namespace

void SemiDiscreteSystem::apply_stiffness(std::span<const double> x, std::span<double> y) const {
  kernels::csr_matvec(csr_view(a_), x, y);
}

void SemiDiscreteSystem::apply_mass(std::span<const double> x, std::span<double> y) const {
  kernels::csr_matvec(csr_view(m_), x, y);
}

const SparseCholesky& SemiDiscreteSystem::mass_solver() const {
  if (!m_factor_) m_factor_ = std::make_unique<SparseCholesky>(m_, "mass matrix");
  return *m_factor_;
}

Vector projection_rhs(const Discretization& disc, const DomainField& u, ProjectionWeight weight) {
  Vector rhs = Vector::Zero(disc.num_dofs());
  ShapeValues sv;
  for (int d = 0; d < disc.num_domains(); ++d) {
    const DofMap& map = disc.dofmap(d);
    const double rho = weight == ProjectionWeight::Density ? disc.material(d).rho : 1.0;
    std::vector<int> dofs;
    for (const CellVolumeRule& r : disc.volume_rules(d)) {
      map.cell_dofs(r.cell, dofs);
      for (std::size_t q = 0; q < r.rule.size(); ++q) {
        const Vec2 val = u(r.rule.points[q], d);
        disc.basis().shape_eval(disc.mesh().to_reference(r.cell, r.rule.points[q]), sv);
        const double w = rho * r.rule.weights[q];
        for (int j = 0; j < disc.basis().num_nodes(); ++j) {
          rhs[dofs[2 * j]] += w * sv.value[j] * val.x();
          rhs[dofs[2 * j + 1]] += w * sv.value[j] * val.y();
        }
      }
    }
  }
  return rhs;
}

Vector l2_project(const SemiDiscreteSystem& sys, const DomainField& u, ProjectionWeight weight) {
  if (!sys.discretization()) throw Error("l2_project requires a discretized system");
  return sys.mass_solver().solve(projection_rhs(*sys.discretization(), u, weight));
}

Vector ritz_project(const Discretization& disc, double t) {
  if (!disc.has_dirichlet())
    throw SingularSystemError("static problem without Dirichlet boundary: stiffness is singular");
  const SparseMatrix a = assemble_stiffness(disc);
  const SparseCholesky solver(a, "stiffness matrix");
  return solver.solve(LoadAssembler(disc).evaluate(t));
}

State set_initial_conditions(const SemiDiscreteSystem& sys, const DomainField& u0,
                             const DomainField& w0, double t0) {
  return {l2_project(sys, u0), l2_project(sys, w0), t0};
}

namespace {

std::span<double> sp(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<const double> csp(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// acc = M^-1 (L(t) - A xi)
void acceleration(const SemiDiscreteSystem& sys, double t, const Vector& xi, Vector& work,
                  Vector& ax, Vector& acc) {
  sys.load(t, sp(work));
  sys.apply_stiffness(csp(xi), sp(ax));
  kernels::axpy(-1.0, csp(ax), sp(work));
  acc = sys.mass_solver().solve(work);
}

}  // namespace

State rk4_advance(const SemiDiscreteSystem& sys, const State& s, double tau) {
  const int n = sys.size();
  Vector work(n), ax(n), tmp_x(n), tmp_v(n);
  Vector k1v, k2v, k3v, k4v;
  const double t = s.t;

  acceleration(sys, t, s.xi, work, ax, k1v);
  // stage 2: x = xi + tau/2 v, v = v + tau/2 a1
  kernels::add_scaled(csp(s.xi), 0.5 * tau, csp(s.xi_dot), sp(tmp_x));
  acceleration(sys, t + 0.5 * tau, tmp_x, work, ax, k2v);
  const Vector k2x = s.xi_dot + 0.5 * tau * k1v;
  // stage 3
  kernels::add_scaled(csp(s.xi), 0.5 * tau, csp(k2x), sp(tmp_x));
  acceleration(sys, t + 0.5 * tau, tmp_x, work, ax, k3v);
  const Vector k3x = s.xi_dot + 0.5 * tau * k2v;
  // stage 4
  kernels::add_scaled(csp(s.xi), tau, csp(k3x), sp(tmp_x));
  acceleration(sys, t + tau, tmp_x, work, ax, k4v);
  const Vector k4x = s.xi_dot + tau * k3v;

  State out{s.xi, s.xi_dot, t + tau};
  const double c = tau / 6.0;
  kernels::axpy(c, csp(s.xi_dot), sp(out.xi));
  kernels::axpy(2.0 * c, csp(k2x), sp(out.xi));
  kernels::axpy(2.0 * c, csp(k3x), sp(out.xi));
  kernels::axpy(c, csp(k4x), sp(out.xi));
  kernels::axpy(c, csp(k1v), sp(out.xi_dot));
  kernels::axpy(2.0 * c, csp(k2v), sp(out.xi_dot));
  kernels::axpy(2.0 * c, csp(k3v), sp(out.xi_dot));
  kernels::axpy(c, csp(k4v), sp(out.xi_dot));
  return out;
}

State integrate(const SemiDiscreteSystem& sys, State s, double tau, double t_end,
                const std::function<void(const State&)>& on_step) {
  const double span = t_end - s.t;
  if (span <= 0.0) return s;
  const long steps = static_cast<long>(std::ceil(span / tau - 1e-9));
  const double dt = span / steps;
  const double t0 = s.t;
  for (long k = 0; k < steps; ++k) {
    s = rk4_advance(sys, s, dt);
    s.t = t0 + (k + 1) * dt;
    if (on_step) on_step(s);
  }
  return s;
}

double energy(const SemiDiscreteSystem& sys, const State& s) {
  const int n = sys.size();
  Vector tmp(n);
  sys.apply_mass(csp(s.xi_dot), sp(tmp));
  double e = kernels::dot(csp(s.xi_dot), csp(tmp));
  sys.apply_stiffness(csp(s.xi), sp(tmp));
  e += kernels::dot(csp(s.xi), csp(tmp));
  return 0.5 * e;
}

double default_time_step(int p, double h, double max_cp, double safety) {
  return safety * h / (double(p) * p) / max_cp;
}

void export_triplets(const SparseMatrix& a, std::ostream& os) {
  os.precision(17);
  for (int c = 0; c < a.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(a, c); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace cutfem
