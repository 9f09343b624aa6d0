#pragma once

#include <array>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "cutfem/mesh.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

/// Implicit geometry. phi < 0 strictly inside, phi > 0 strictly outside,
/// phi = 0 on the boundary or interface.
class LevelSet {
 public:
  virtual ~LevelSet() = default;
  virtual double value(const Point& x) const = 0;
  virtual Vec2 gradient(const Point& x) const = 0;
};

/// Signed distance to a circle: |x - center| - radius.
class CircleLevelSet final : public LevelSet {
 public:
  CircleLevelSet(Point center, double radius);
  double value(const Point& x) const override;
  Vec2 gradient(const Point& x) const override;
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Point center_;
  double radius_;
};

/// Signed linear function orientation * (x[axis] - offset). With orientation
/// +1 the inside is the half plane x[axis] < offset.
class HalfPlaneLevelSet final : public LevelSet {
 public:
  HalfPlaneLevelSet(double offset, int axis, double orientation = 1.0);
  double value(const Point& x) const override;
  Vec2 gradient(const Point& x) const override;
  double offset() const { return offset_; }
  int axis() const { return axis_; }

 private:
  double offset_;
  int axis_;
  double orientation_;
};

/// Builds one of the builtin shapes by name:
///   "circle"     params = {cx, cy, R}
///   "half_plane" params = {offset, axis[, orientation]}
std::shared_ptr<const LevelSet> builtin_levelset(const std::string& name,
                                                 const std::vector<double>& params);

/// Location of a background cell with respect to the sign of phi.
enum class CellLocation { Negative, Positive, Cut };

/// Location of a cell relative to a requested domain side.
enum class CellClass { Inside, Outside, Cut };

struct ClassifyOptions {
  int edge_samples = 16;     // sign samples per edge before extremum refinement
  int interior_samples = 6;  // per direction; detects features inside a cell
  int refine_iterations = 60;
};

/// Sign-based location of each cell. Corner values with |phi| < 1e-12 h
/// are treated as +1e-12 h. Throws GeometryError when a cell is ambiguous.
std::vector<CellLocation> locate_cells(const BackgroundMesh& mesh, const LevelSet& phi,
                                       const ClassifyOptions& opts = {});

std::vector<CellClass> classify_cells(const BackgroundMesh& mesh, const LevelSet& phi, Side side,
                                      const ClassifyOptions& opts = {});

/// Cell sets and stabilized faces for one level set. For a single domain only
/// the requested side is populated; for an interface both sides are.
struct CutTopology {
  std::vector<CellLocation> location;
  std::vector<int> cut_cells;                            // T^C
  std::array<std::vector<int>, 2> cells;                 // T_i, index 0 = Inside side
  std::array<std::vector<InteriorFace>, 2> stabilized_faces;  // F_i
  std::array<bool, 2> has_side{false, false};

  static int slot(Side s) { return s == Side::Inside ? 0 : 1; }
  const std::vector<int>& cells_of(Side s) const { return cells[slot(s)]; }
  const std::vector<InteriorFace>& faces_of(Side s) const { return stabilized_faces[slot(s)]; }
  bool is_active(int cell, Side s) const;
  bool is_cut(int cell) const { return location[cell] == CellLocation::Cut; }
};

/// F_i = { interior faces T_a | T_b : both in T_i and at least one cut }.
/// Each face is stored once with normal along +x or +y.
std::vector<InteriorFace> stabilized_face_set(const BackgroundMesh& mesh,
                                              const std::vector<CellLocation>& location,
                                              Side side);

CutTopology build_topology(const BackgroundMesh& mesh, const LevelSet& phi,
                           std::initializer_list<Side> sides, const ClassifyOptions& opts = {});

/// Roots of t -> phi(a + t (b - a)) on [0, 1], ascending. Sign changes
/// between samples are bisected to machine precision. With refine_extrema set,
/// sampled local extrema are also refined by golden-section search so that a
/// pair of close roots inside one sample interval is not missed.
std::vector<double> segment_roots(const LevelSet& phi, const Point& a, const Point& b,
                                  int samples = 16, bool refine_extrema = false,
                                  int iterations = 60);

}  // namespace cutfem
