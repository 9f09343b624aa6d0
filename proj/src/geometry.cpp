#include "cutfem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cutfem {

CircleLevelSet::CircleLevelSet(Point center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0)) throw GeometryError("circle level set: radius must be positive");
}

double CircleLevelSet::value(const Point& x) const { return (x - center_).norm() - radius_; }

Vec2 CircleLevelSet::gradient(const Point& x) const {
  const Vec2 d = x - center_;
  const double r = d.norm();
  if (r == 0.0) return Vec2(1.0, 0.0);
  return d / r;
}

HalfPlaneLevelSet::HalfPlaneLevelSet(double offset, int axis, double orientation)
    : offset_(offset), axis_(axis), orientation_(orientation) {
  if (axis != 0 && axis != 1) throw GeometryError("half plane level set: axis must be 0 or 1");
  if (orientation != 1.0 && orientation != -1.0)
    throw GeometryError("half plane level set: orientation must be +1 or -1");
}

double HalfPlaneLevelSet::value(const Point& x) const { return orientation_ * (x[axis_] - offset_); }

Vec2 HalfPlaneLevelSet::gradient(const Point&) const {
  Vec2 g = Vec2::Zero();
  g[axis_] = orientation_;
  return g;
}

std::shared_ptr<const LevelSet> builtin_levelset(const std::string& name,
                                                 const std::vector<double>& params) {
  if (name == "circle") {
    if (params.size() != 3) throw GeometryError("circle expects {cx, cy, R}");
    return std::make_shared<CircleLevelSet>(Point(params[0], params[1]), params[2]);
  }
  if (name == "half_plane") {
    if (params.size() != 2 && params.size() != 3)
      throw GeometryError("half_plane expects {offset, axis[, orientation]}");
    const double orientation = params.size() == 3 ? params[2] : 1.0;
    return std::make_shared<HalfPlaneLevelSet>(params[0], static_cast<int>(params[1]), orientation);
  }
  throw GeometryError("unknown level set: " + name);
}

namespace {

double bisect(const LevelSet& phi, const Point& a, const Point& b, double lo, double hi,
              int iterations) {
  auto f = [&](double t) { return phi.value(a + t * (b - a)); };
  double flo = f(lo);
  for (int it = 0; it < iterations && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimizes s * phi on [lo, hi] by golden-section search.
double golden_min(const LevelSet& phi, const Point& a, const Point& b, double lo, double hi,
                  double s, int iterations) {
  auto f = [&](double t) { return s * phi.value(a + t * (b - a)); };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> segment_roots(const LevelSet& phi, const Point& a, const Point& b,
                                  int samples, bool refine_extrema, int iterations) {
  samples = std::max(samples, 1);
  std::vector<double> t(samples + 1), f(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    t[i] = static_cast<double>(i) / samples;
    f[i] = phi.value(a + t[i] * (b - a));
  }
  std::vector<double> roots;
  auto sgn = [](double v) { return v < 0.0 ? -1 : 1; };
  for (int i = 0; i < samples; ++i) {
    if (f[i] == 0.0 && i > 0) {
      roots.push_back(t[i]);
      continue;
    }
    if (sgn(f[i]) != sgn(f[i + 1]) && f[i + 1] != 0.0) {
      roots.push_back(bisect(phi, a, b, t[i], t[i + 1], iterations));
    }
  }
  if (refine_extrema) {
    // Look for a dip of s*phi between two same-signed samples.
    for (int i = 0; i <= samples; ++i) {
      const int lo = std::max(0, i - 1), hi = std::min(samples, i + 1);
      const double s = sgn(f[i]);
      if (sgn(f[lo]) != s || sgn(f[hi]) != s) continue;
      if (s * f[i] > s * f[lo] || s * f[i] > s * f[hi]) continue;
      const double m = golden_min(phi, a, b, t[lo], t[hi], s, iterations);
      const double fm = phi.value(a + m * (b - a));
      if (sgn(fm) == s) continue;
      if (m > t[lo]) roots.push_back(bisect(phi, a, b, t[lo], m, iterations));
      if (m < t[hi]) roots.push_back(bisect(phi, a, b, m, t[hi], iterations));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                roots.end());
  }
  return roots;
}

std::vector<CellLocation> locate_cells(const BackgroundMesh& mesh, const LevelSet& phi,
                                       const ClassifyOptions& opts) {
  const double h = mesh.h;
  const double snap = 1e-12 * h;
  auto corner_value = [&](const Point& x) {
    const double v = phi.value(x);
    return std::abs(v) < snap ? snap : v;
  };
  std::vector<CellLocation> loc(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Point x0 = mesh.cell_corner(c);
    const std::array<Point, 4> corners = {x0, x0 + Point(h, 0.0), x0 + Point(h, h),
                                          x0 + Point(0.0, h)};
    int neg = 0;
    for (const Point& p : corners) neg += corner_value(p) < 0.0 ? 1 : 0;
    if (neg != 0 && neg != 4) {
      loc[c] = CellLocation::Cut;
      continue;
    }
    bool cut = false;
    for (int e = 0; e < 4 && !cut; ++e) {
      const Point& a = corners[e];
      const Point& b = corners[(e + 1) % 4];
      for (double r : segment_roots(phi, a, b, opts.edge_samples, true, opts.refine_iterations)) {
        // Roots at a snapped corner are touching points, not crossings.
        if (r > 1e-12 && r < 1.0 - 1e-12) {
          cut = true;
          break;
        }
      }
    }
    if (cut) {
      loc[c] = CellLocation::Cut;
      continue;
    }
    const double corner_sign = neg == 4 ? -1.0 : 1.0;
    const int n = std::max(opts.interior_samples, 2);
    for (int j = 1; j < n; ++j) {
      for (int i = 1; i < n; ++i) {
        const double v = phi.value(x0 + h * Point(double(i) / n, double(j) / n));
        if (v * corner_sign < -snap) {
          throw GeometryError("cell " + std::to_string(c) +
                              ": level set feature smaller than a cell (ambiguous classification)");
        }
      }
    }
    loc[c] = neg == 4 ? CellLocation::Negative : CellLocation::Positive;
  }
  return loc;
}

std::vector<CellClass> classify_cells(const BackgroundMesh& mesh, const LevelSet& phi, Side side,
                                      const ClassifyOptions& opts) {
  const auto loc = locate_cells(mesh, phi, opts);
  const CellLocation mine = side == Side::Inside ? CellLocation::Negative : CellLocation::Positive;
  std::vector<CellClass> out(loc.size());
  for (std::size_t c = 0; c < loc.size(); ++c) {
    if (loc[c] == CellLocation::Cut) out[c] = CellClass::Cut;
    else out[c] = loc[c] == mine ? CellClass::Inside : CellClass::Outside;
  }
  return out;
}

namespace {

bool active(CellLocation l, Side side) {
  if (l == CellLocation::Cut) return true;
  return side == Side::Inside ? l == CellLocation::Negative : l == CellLocation::Positive;
}

}  // namespace

bool CutTopology::is_active(int cell, Side s) const { return active(location[cell], s); }

std::vector<InteriorFace> stabilized_face_set(const BackgroundMesh& mesh,
                                              const std::vector<CellLocation>& location,
                                              Side side) {
  std::vector<InteriorFace> out;
  for (const InteriorFace& f : interior_faces(mesh)) {
    const CellLocation a = location[f.minus], b = location[f.plus];
    if (!active(a, side) || !active(b, side)) continue;
    if (a == CellLocation::Cut || b == CellLocation::Cut) out.push_back(f);
  }
  return out;
}

CutTopology build_topology(const BackgroundMesh& mesh, const LevelSet& phi,
                           std::initializer_list<Side> sides, const ClassifyOptions& opts) {
  CutTopology topo;
  topo.location = locate_cells(mesh, phi, opts);
  for (int c = 0; c < mesh.num_cells(); ++c)
    if (topo.location[c] == CellLocation::Cut) topo.cut_cells.push_back(c);
  for (Side s : sides) {
    const int k = CutTopology::slot(s);
    topo.has_side[k] = true;
    for (int c = 0; c < mesh.num_cells(); ++c)
      if (active(topo.location[c], s)) topo.cells[k].push_back(c);
    topo.stabilized_faces[k] = stabilized_face_set(mesh, topo.location, s);
  }
  return topo;
}

}  // namespace cutfem
