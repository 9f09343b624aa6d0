#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>

#include "cutfem/dofmap.hpp"
#include "cutfem/geometry.hpp"
#include "cutfem/material.hpp"
#include "cutfem/mesh.hpp"

namespace cutfem {

using TimeField = std::function<Vec2(const Point&, double)>;

enum class BoundaryKind { Dirichlet, Neumann };

/// Material and data for one domain. Empty functions mean homogeneous data.
struct DomainData {
  Material material = kSandstone;
  TimeField body_force;
  TimeField dirichlet;  // g^D on the aligned boundary (and on the immersed boundary when Dirichlet)
  TimeField neumann;    // g^N on the immersed boundary of a single domain
};

/// Everything needed to discretize one problem on a background mesh.
///
/// Single domain: the material occupies `single_side` of phi and domains[0]
/// holds its data. Interface: domain 1 (domains[0]) is phi > 0 and domain 2
/// (domains[1]) is phi < 0. The outer boundary of the mesh is the aligned
/// boundary and carries Dirichlet data imposed weakly.
struct ProblemDescription {
  BackgroundMesh mesh;
  int order = 1;
  std::shared_ptr<const LevelSet> phi;
  ProblemKind kind = ProblemKind::Single;
  Side single_side = Side::Outside;
  BoundaryKind immersed_bc = BoundaryKind::Neumann;
  bool outer_dirichlet = true;
  std::array<DomainData, 2> domains{};
  PenaltyOverrides penalty_overrides{};
  bool stabilize = true;
  std::optional<int> quadrature_degree;

  int num_domains() const { return kind == ProblemKind::Single ? 1 : 2; }
  Side side_of(int domain) const;
  int degree() const { return quadrature_degree.value_or(2 * order + 2); }
  PenaltyConfig penalty() const;
};

}  // namespace cutfem
