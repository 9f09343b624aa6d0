#pragma once

#include <vector>

#include "cutfem/basis.hpp"
#include "cutfem/dofmap.hpp"
#include "cutfem/problem.hpp"
#include "cutfem/quadrature.hpp"

namespace cutfem {

struct CellVolumeRule {
  int cell;
  QuadratureRule rule;
};

struct CellSurfaceRule {
  int cell;
  SurfaceQuadratureRule rule;
};

/// Geometry, DoF numbering and every quadrature rule of a problem, built
/// once and shared by assembly, loads, projections and error norms.
class Discretization {
 public:
  explicit Discretization(ProblemDescription problem);

  const ProblemDescription& problem() const { return problem_; }
  const BackgroundMesh& mesh() const { return problem_.mesh; }
  const CutTopology& topology() const { return topo_; }
  const DofMaps& dofs() const { return dofs_; }
  const DofMap& dofmap(int domain) const { return dofs_.maps[domain]; }
  const ElementBasis& basis() const { return basis_; }
  const PenaltyConfig& penalty() const { return penalty_; }
  int num_dofs() const { return dofs_.total(); }
  int num_domains() const { return problem_.num_domains(); }
  const Material& material(int domain) const { return problem_.domains[domain].material; }

  /// Volume rules over T cap Omega_i for every active cell of domain i.
  const std::vector<CellVolumeRule>& volume_rules(int domain) const { return volume_[domain]; }
  /// Immersed-boundary rules (single domain), outward normals.
  const std::vector<CellSurfaceRule>& immersed_rules() const { return immersed_; }
  /// Aligned-boundary rules of domain i restricted to Omega_i.
  const std::vector<CellSurfaceRule>& outer_rules(int domain) const { return outer_[domain]; }
  /// Interface rules (interface problem), normals from domain 2 into domain 1.
  const std::vector<CellSurfaceRule>& interface_rules() const { return interface_; }
  /// Faces carrying the ghost penalty for domain i.
  const std::vector<InteriorFace>& ghost_faces(int domain) const;

  bool has_dirichlet() const;
  double domain_measure() const;

 private:
  ProblemDescription problem_;
  PenaltyConfig penalty_;
  CutTopology topo_;
  DofMaps dofs_;
  ElementBasis basis_;
  std::array<std::vector<CellVolumeRule>, 2> volume_;
  std::array<std::vector<CellSurfaceRule>, 2> outer_;
  std::vector<CellSurfaceRule> immersed_;
  std::vector<CellSurfaceRule> interface_;
};

}  // namespace cutfem
