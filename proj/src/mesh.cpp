#include "cutfem/mesh.hpp"

#include <cmath>

namespace cutfem {

BackgroundMesh::BackgroundMesh(Point origin_, double h_, int nx_, int ny_)
    : origin(std::move(origin_)), h(h_), nx(nx_), ny(ny_) {
  if (!(h > 0.0) || nx < 1 || ny < 1) throw Error("BackgroundMesh: invalid size");
}

BackgroundMesh BackgroundMesh::square(double x0, double side_length, int n) {
  return BackgroundMesh(Point(x0, x0), side_length / n, n, n);
}

Point BackgroundMesh::cell_corner(int c) const {
  return origin + h * Point(cell_ix(c), cell_iy(c));
}

Point BackgroundMesh::cell_center(int c) const { return cell_corner(c) + Point(0.5 * h, 0.5 * h); }

Point BackgroundMesh::to_reference(int c, const Point& x) const { return (x - cell_corner(c)) / h; }

Point BackgroundMesh::to_physical(int c, const Point& xi) const { return cell_corner(c) + h * xi; }

int BackgroundMesh::locate(const Point& x) const {
  const double fx = (x.x() - origin.x()) / h;
  const double fy = (x.y() - origin.y()) / h;
  const double tol = 1e-12;
  if (fx < -tol || fy < -tol || fx > nx + tol || fy > ny + tol) return -1;
  int ix = std::min(nx - 1, std::max(0, static_cast<int>(std::floor(fx))));
  int iy = std::min(ny - 1, std::max(0, static_cast<int>(std::floor(fy))));
  return cell_index(ix, iy);
}

std::array<Point, 2> face_endpoints(const BackgroundMesh& mesh, const InteriorFace& f) {
  const Point c = mesh.cell_corner(f.plus);
  if (f.axis == 0) return {c, c + Point(0.0, mesh.h)};
  return {c, c + Point(mesh.h, 0.0)};
}

std::array<Point, 2> face_endpoints(const BackgroundMesh& mesh, const BoundaryFace& f) {
  const Point c = mesh.cell_corner(f.cell);
  const double h = mesh.h;
  switch (f.side) {
    case BoundarySide::Left: return {c, c + Point(0.0, h)};
    case BoundarySide::Right: return {c + Point(h, 0.0), c + Point(h, h)};
    case BoundarySide::Bottom: return {c, c + Point(h, 0.0)};
    case BoundarySide::Top: return {c + Point(0.0, h), c + Point(h, h)};
  }
  return {c, c};
}

Vec2 outward_normal(BoundarySide side) {
  switch (side) {
    case BoundarySide::Left: return Vec2(-1.0, 0.0);
    case BoundarySide::Right: return Vec2(1.0, 0.0);
    case BoundarySide::Bottom: return Vec2(0.0, -1.0);
    case BoundarySide::Top: return Vec2(0.0, 1.0);
  }
  return Vec2::Zero();
}

std::vector<InteriorFace> interior_faces(const BackgroundMesh& mesh) {
  std::vector<InteriorFace> faces;
  for (int iy = 0; iy < mesh.ny; ++iy) {
    for (int ix = 0; ix < mesh.nx; ++ix) {
      const int c = mesh.cell_index(ix, iy);
      if (ix + 1 < mesh.nx) faces.push_back({c, mesh.cell_index(ix + 1, iy), 0});
      if (iy + 1 < mesh.ny) faces.push_back({c, mesh.cell_index(ix, iy + 1), 1});
    }
  }
  return faces;
}

std::vector<BoundaryFace> boundary_faces(const BackgroundMesh& mesh) {
  std::vector<BoundaryFace> faces;
  for (int ix = 0; ix < mesh.nx; ++ix) {
    faces.push_back({mesh.cell_index(ix, 0), BoundarySide::Bottom});
    faces.push_back({mesh.cell_index(ix, mesh.ny - 1), BoundarySide::Top});
  }
  for (int iy = 0; iy < mesh.ny; ++iy) {
    faces.push_back({mesh.cell_index(0, iy), BoundarySide::Left});
    faces.push_back({mesh.cell_index(mesh.nx - 1, iy), BoundarySide::Right});
  }
  return faces;
}

}  // namespace cutfem
