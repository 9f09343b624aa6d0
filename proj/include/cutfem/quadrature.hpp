#pragma once

#include <vector>

#include "cutfem/geometry.hpp"
#include "cutfem/mesh.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [0, 1]; 1 <= n <= 30.
Rule1D gauss_rule_1d(int n);

/// p + 1 Gauss-Lobatto nodes on [0, 1], ascending; 1 <= p <= 5.
std::vector<double> gauss_lobatto_nodes(int p);

/// Number of Gauss points per direction that integrates degree `degree` exactly.
int gauss_points_for_degree(int degree);

/// Volume rule: physical points, weights in area units.
struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  double measure() const;
  void append(const QuadratureRule& other);
};

/// Rule on a curve. Weights are in length units; normals are unit vectors.
struct SurfaceQuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<Vec2> normals;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  double measure() const;
  void append(const SurfaceQuadratureRule& other);
};

/// Tensor Gauss rule over the whole cell, exact for Q_degree.
QuadratureRule full_cell_rule(const BackgroundMesh& mesh, int cell, int degree);

/// Rule over T cap {phi < 0} (side Inside) or T cap {phi > 0} (side Outside).
/// The zero set inside the cell must be a graph over one coordinate axis.
/// Throws QuadratureError when no height direction exists.
QuadratureRule cut_cell_volume_rule(const BackgroundMesh& mesh, int cell, const LevelSet& phi,
                                    Side side, int degree);

/// Rule on {phi = 0} cap T. Normals are grad(phi)/|grad(phi)| when
/// `outward_from` is Inside (pointing out of {phi < 0}) and the negation otherwise.
SurfaceQuadratureRule cut_cell_surface_rule(const BackgroundMesh& mesh, int cell,
                                            const LevelSet& phi, Side outward_from, int degree);

/// Gauss rule along a straight mesh face with a constant normal. When `phi`
/// is given the rule is restricted to the part of the face on `side`.
SurfaceQuadratureRule aligned_face_rule(const Point& a, const Point& b, const Vec2& normal,
                                        int degree, const LevelSet* phi = nullptr,
                                        Side side = Side::Inside);

/// Volume rule for any active cell: full rule when uncut, cut rule otherwise.
QuadratureRule cell_rule(const BackgroundMesh& mesh, int cell, CellLocation location,
                         const LevelSet& phi, Side side, int degree);

}  // namespace cutfem
