#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cutfem/types.hpp"

namespace cutfem {

/// Uniform Cartesian background mesh of nx * ny square cells of side h.
/// Cells are numbered row by row: index = iy * nx + ix.
struct BackgroundMesh {
  Point origin{0.0, 0.0};
  double h = 1.0;
  int nx = 1;
  int ny = 1;

  BackgroundMesh() = default;
  BackgroundMesh(Point origin_, double h_, int nx_, int ny_);

  /// Square [x0, x0 + n h]^2 split into n * n cells.
  static BackgroundMesh square(double x0, double side_length, int n);

  int num_cells() const { return nx * ny; }
  int cell_index(int ix, int iy) const { return iy * nx + ix; }
  int cell_ix(int c) const { return c % nx; }
  int cell_iy(int c) const { return c / nx; }
  Point cell_corner(int c) const;
  Point cell_center(int c) const;
  /// Reference coordinates in [0,1]^2 of a physical point relative to cell c.
  Point to_reference(int c, const Point& x) const;
  Point to_physical(int c, const Point& xi) const;
  /// Cell containing x (points on shared edges go to the upper/right cell); -1 if outside.
  int locate(const Point& x) const;
  double xmax() const { return origin.x() + nx * h; }
  double ymax() const { return origin.y() + ny * h; }
};

/// Interior face shared by two cells. `axis` is the normal direction:
/// 0 means a vertical face with normal +x (minus = left, plus = right),
/// 1 means a horizontal face with normal +y (minus = below, plus = above).
struct InteriorFace {
  int minus = -1;
  int plus = -1;
  int axis = 0;
  friend bool operator==(const InteriorFace&, const InteriorFace&) = default;
};

enum class BoundarySide { Left, Right, Bottom, Top };

/// Face of a cell lying on the outer boundary of the background mesh.
struct BoundaryFace {
  int cell = -1;
  BoundarySide side = BoundarySide::Left;
};

/// End points of a cell face (counter-clockwise order is not implied).
std::array<Point, 2> face_endpoints(const BackgroundMesh& mesh, const InteriorFace& f);
std::array<Point, 2> face_endpoints(const BackgroundMesh& mesh, const BoundaryFace& f);
Vec2 outward_normal(BoundarySide side);

std::vector<InteriorFace> interior_faces(const BackgroundMesh& mesh);
std::vector<BoundaryFace> boundary_faces(const BackgroundMesh& mesh);

}  // namespace cutfem
