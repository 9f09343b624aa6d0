#include "cutfem/discretization.hpp"

namespace cutfem {

Side ProblemDescription::side_of(int domain) const {
  if (kind == ProblemKind::Single) return single_side;
  return domain == 0 ? Side::Outside : Side::Inside;
}

PenaltyConfig ProblemDescription::penalty() const {
  const Material* m2 = kind == ProblemKind::Interface ? &domains[1].material : nullptr;
  PenaltyConfig c = PenaltyConfig::with_overrides(order, domains[0].material, m2, penalty_overrides);
  if (!stabilize) {
    c.gamma_M = {0.0, 0.0};
    c.gamma_A = {0.0, 0.0};
  }
  return c;
}

namespace {

CutTopology topology_for(const ProblemDescription& p) {
  if (!p.phi) throw Error("problem has no level set");
  if (p.kind == ProblemKind::Single) return build_topology(p.mesh, *p.phi, {p.single_side});
  return build_topology(p.mesh, *p.phi, {Side::Inside, Side::Outside});
}

}  // namespace

Discretization::Discretization(ProblemDescription problem)
    : problem_(std::move(problem)),
      penalty_(problem_.penalty()),
      topo_(topology_for(problem_)),
      dofs_(build_dofmap(problem_.mesh, problem_.order, topo_, problem_.kind, problem_.single_side)),
      basis_(problem_.order, problem_.mesh.h) {
  for (int d = 0; d < num_domains(); ++d) problem_.domains[d].material.validate();
  const BackgroundMesh& mesh = problem_.mesh;
  const LevelSet& phi = *problem_.phi;
  const int degree = problem_.degree();

  for (int d = 0; d < num_domains(); ++d) {
    const Side side = problem_.side_of(d);
    for (int c : topo_.cells_of(side)) {
      volume_[d].push_back({c, cell_rule(mesh, c, topo_.location[c], phi, side, degree)});
    }
    if (problem_.outer_dirichlet) {
      for (const BoundaryFace& f : boundary_faces(mesh)) {
        if (!topo_.is_active(f.cell, side)) continue;
        const auto [a, b] = face_endpoints(mesh, f);
        const LevelSet* clip = topo_.is_cut(f.cell) ? &phi : nullptr;
        SurfaceQuadratureRule r = aligned_face_rule(a, b, outward_normal(f.side), degree, clip, side);
        if (!r.empty()) outer_[d].push_back({f.cell, std::move(r)});
      }
    }
  }
  if (problem_.kind == ProblemKind::Single) {
    for (int c : topo_.cut_cells) {
      SurfaceQuadratureRule r = cut_cell_surface_rule(mesh, c, phi, problem_.single_side, degree);
      if (!r.empty()) immersed_.push_back({c, std::move(r)});
    }
  } else {
    for (int c : topo_.cut_cells) {
      SurfaceQuadratureRule r = cut_cell_surface_rule(mesh, c, phi, Side::Inside, degree);
      if (!r.empty()) interface_.push_back({c, std::move(r)});
    }
  }
}

const std::vector<InteriorFace>& Discretization::ghost_faces(int domain) const {
  return topo_.faces_of(problem_.side_of(domain));
}

bool Discretization::has_dirichlet() const {
  for (int d = 0; d < num_domains(); ++d)
    if (!outer_[d].empty()) return true;
  return problem_.kind == ProblemKind::Single && problem_.immersed_bc == BoundaryKind::Dirichlet &&
         !immersed_.empty();
}

double Discretization::domain_measure() const {
  double s = 0.0;
  for (int d = 0; d < num_domains(); ++d)
    for (const CellVolumeRule& r : volume_[d]) s += r.rule.measure();
  return s;
}

}  // namespace cutfem
