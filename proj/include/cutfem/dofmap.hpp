#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cutfem/basis.hpp"
#include "cutfem/geometry.hpp"
#include "cutfem/mesh.hpp"

namespace cutfem {

/// Continuous vector-valued Q_p numbering over the active cells of one
/// domain. Global DoF = offset + 2 * node + component, with active nodes
/// numbered row by row.
class DofMap {
 public:
  DofMap(const BackgroundMesh& mesh, int p, const std::vector<int>& active_cells, int offset = 0);

  int order() const { return p_; }
  int num_dofs() const { return 2 * num_nodes_; }
  int num_nodes() const { return num_nodes_; }
  int offset() const { return offset_; }
  const BackgroundMesh& mesh() const { return mesh_; }
  const std::vector<int>& cells() const { return cells_; }
  bool is_active(int cell) const { return cell >= 0 && active_[cell]; }

  /// Global DoF indices of a cell in local order 2 * j + component.
  std::vector<int> cell_dofs(int cell) const;
  void cell_dofs(int cell, std::vector<int>& out) const;

  /// Physical position of a global node on the background grid.
  Point grid_node_position(int gi, int gj) const;
  /// Node index (without offset) of grid node (gi, gj); -1 if inactive.
  int node_index(int gi, int gj) const { return node_[gj * (mesh_.nx * p_ + 1) + gi]; }
  /// Positions of all active nodes, by node index.
  std::vector<Point> node_positions() const;

 private:
  BackgroundMesh mesh_;
  int p_;
  int offset_;
  int num_nodes_ = 0;
  std::vector<int> cells_;
  std::vector<char> active_;
  std::vector<int> node_;
  std::vector<double> gl_;
};

enum class ProblemKind { Single, Interface };

/// DoF maps for a problem. Single: one map over T. Interface: map 0 over T_1
/// (the Outside side) followed by map 1 over T_2 (Inside), so the global
/// vector is [domain 1 | domain 2].
struct DofMaps {
  std::vector<DofMap> maps;
  std::vector<Side> sides;
  int total() const;
};

/// Domain 1 is phi > 0 and domain 2 is phi < 0 for the interface problem.
DofMaps build_dofmap(const BackgroundMesh& mesh, int p, const CutTopology& topology,
                     ProblemKind kind, Side single_side = Side::Inside);

using VectorField = std::function<Vec2(const Point&)>;

/// Nodal interpolation of a field into the coefficients of one map. The
/// returned vector has the map's size (no offset applied).
std::vector<double> interpolate(const VectorField& field, const DofMap& dofs);

struct FieldSample {
  Vec2 value;
  Mat2 grad;  // grad(r, c) = d u_r / d x_c
};

/// Evaluates a discrete field at a physical point. `coeffs` is indexed by
/// global DoF (offset included). Throws when the point is not covered by an
/// active cell.
FieldSample evaluate_field(std::span<const double> coeffs, const DofMap& dofs,
                           const ElementBasis& basis, const Point& x);
FieldSample evaluate_in_cell(std::span<const double> coeffs, const DofMap& dofs,
                             const ElementBasis& basis, int cell, const Point& x);

}  // namespace cutfem
