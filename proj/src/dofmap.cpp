#include "cutfem/dofmap.hpp"

#include <cmath>

#include "cutfem/quadrature.hpp"

namespace cutfem {

DofMap::DofMap(const BackgroundMesh& mesh, int p, const std::vector<int>& active_cells, int offset)
    : mesh_(mesh), p_(p), offset_(offset), cells_(active_cells), gl_(gauss_lobatto_nodes(p)) {
  active_.assign(mesh.num_cells(), 0);
  for (int c : cells_) active_[c] = 1;
  const int ni = mesh.nx * p + 1, nj = mesh.ny * p + 1;
  std::vector<char> used(static_cast<std::size_t>(ni) * nj, 0);
  for (int c : cells_) {
    const int i0 = mesh.cell_ix(c) * p, j0 = mesh.cell_iy(c) * p;
    for (int b = 0; b <= p; ++b)
      for (int a = 0; a <= p; ++a) used[(j0 + b) * ni + i0 + a] = 1;
  }
  node_.assign(used.size(), -1);
  for (std::size_t k = 0; k < used.size(); ++k)
    if (used[k]) node_[k] = num_nodes_++;
}

void DofMap::cell_dofs(int cell, std::vector<int>& out) const {
  const int n1 = p_ + 1;
  out.resize(2 * n1 * n1);
  const int ni = mesh_.nx * p_ + 1;
  const int i0 = mesh_.cell_ix(cell) * p_, j0 = mesh_.cell_iy(cell) * p_;
  for (int b = 0; b < n1; ++b) {
    for (int a = 0; a < n1; ++a) {
      const int node = node_[(j0 + b) * ni + i0 + a];
      const int j = b * n1 + a;
      out[2 * j] = offset_ + 2 * node;
      out[2 * j + 1] = offset_ + 2 * node + 1;
    }
  }
}

std::vector<int> DofMap::cell_dofs(int cell) const {
  std::vector<int> out;
  cell_dofs(cell, out);
  return out;
}

Point DofMap::grid_node_position(int gi, int gj) const {
  const int ci = std::min(gi / p_, mesh_.nx - 1), cj = std::min(gj / p_, mesh_.ny - 1);
  return mesh_.origin + mesh_.h * Point(ci + gl_[gi - ci * p_], cj + gl_[gj - cj * p_]);
}

std::vector<Point> DofMap::node_positions() const {
  std::vector<Point> pos(num_nodes_);
  const int ni = mesh_.nx * p_ + 1, nj = mesh_.ny * p_ + 1;
  for (int gj = 0; gj < nj; ++gj)
    for (int gi = 0; gi < ni; ++gi) {
      const int n = node_[gj * ni + gi];
      if (n >= 0) pos[n] = grid_node_position(gi, gj);
    }
  return pos;
}

int DofMaps::total() const {
  int n = 0;
  for (const DofMap& m : maps) n += m.num_dofs();
  return n;
}

DofMaps build_dofmap(const BackgroundMesh& mesh, int p, const CutTopology& topology,
                     ProblemKind kind, Side single_side) {
  DofMaps out;
  if (kind == ProblemKind::Single) {
    out.maps.emplace_back(mesh, p, topology.cells_of(single_side), 0);
    out.sides.push_back(single_side);
    return out;
  }
  out.maps.emplace_back(mesh, p, topology.cells_of(Side::Outside), 0);
  out.sides.push_back(Side::Outside);
  out.maps.emplace_back(mesh, p, topology.cells_of(Side::Inside), out.maps[0].num_dofs());
  out.sides.push_back(Side::Inside);
  return out;
}

std::vector<double> interpolate(const VectorField& field, const DofMap& dofs) {
  const std::vector<Point> pos = dofs.node_positions();
  std::vector<double> out(dofs.num_dofs());
  for (std::size_t n = 0; n < pos.size(); ++n) {
    const Vec2 v = field(pos[n]);
    out[2 * n] = v.x();
    out[2 * n + 1] = v.y();
  }
  return out;
}

FieldSample evaluate_in_cell(std::span<const double> coeffs, const DofMap& dofs,
                             const ElementBasis& basis, int cell, const Point& x) {
  const Point xi = dofs.mesh().to_reference(cell, x);
  const ShapeValues sv = basis.shape_eval(xi);
  const std::vector<int> idx = dofs.cell_dofs(cell);
  FieldSample s{Vec2::Zero(), Mat2::Zero()};
  for (int j = 0; j < basis.num_nodes(); ++j) {
    for (int c = 0; c < 2; ++c) {
      const double u = coeffs[idx[2 * j + c]];
      s.value[c] += u * sv.value[j];
      s.grad.row(c) += u * sv.grad[j].transpose();
    }
  }
  return s;
}

FieldSample evaluate_field(std::span<const double> coeffs, const DofMap& dofs,
                           const ElementBasis& basis, const Point& x) {
  const BackgroundMesh& mesh = dofs.mesh();
  int cell = mesh.locate(x);
  if (cell < 0) throw Error("evaluate_field: point outside the covering mesh");
  if (!dofs.is_active(cell)) {
    // A point on a cell boundary may belong to an active neighbour.
    const Point xi = mesh.to_reference(cell, x);
    const int ix = mesh.cell_ix(cell), iy = mesh.cell_iy(cell);
    cell = -1;
    for (int dy = -1; dy <= 0 && cell < 0; ++dy)
      for (int dx = -1; dx <= 0 && cell < 0; ++dx) {
        if ((dx != 0 && xi.x() > 1e-12) || (dy != 0 && xi.y() > 1e-12)) continue;
        const int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0) continue;
        const int c = mesh.cell_index(jx, jy);
        if (dofs.is_active(c)) cell = c;
      }
    if (cell < 0) throw Error("evaluate_field: point outside the covering mesh");
  }
  return evaluate_in_cell(coeffs, dofs, basis, cell, x);
}

}  // namespace cutfem
