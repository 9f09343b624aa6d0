#include "cutfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cutfem {

namespace {

// Legendre P_n and its derivative at x in [-1, 1].
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

Rule1D gauss_rule_1d(int n) {
  if (n < 1 || n > 30) throw QuadratureError("gauss_rule_1d: n must be in [1, 30]");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre(n, x).second;
    // map [-1, 1] -> [0, 1]; nodes ascending
    r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

std::vector<double> gauss_lobatto_nodes(int p) {
  if (p < 1 || p > 5) throw QuadratureError("gauss_lobatto_nodes: p must be in [1, 5]");
  std::vector<double> nodes(p + 1);
  nodes.front() = 0.0;
  nodes.back() = 1.0;
  // Interior nodes are roots of P_p'.
  for (int j = 1; j < p; ++j) {
    double x = -std::cos(std::numbers::pi * j / p);
    for (int it = 0; it < 100; ++it) {
      auto [pp, dp] = legendre(p, x);
      const double d2 = (2.0 * x * dp - p * (p + 1.0) * pp) / (1.0 - x * x);
      const double dx = dp / d2;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[j] = 0.5 * (x + 1.0);
  }
  // Enforce exact symmetry about 1/2.
  for (int j = 0; j <= p / 2; ++j) {
    const double d = 0.5 * (nodes[p - j] - nodes[j]);
    nodes[j] = 0.5 - d;
    nodes[p - j] = 0.5 + d;
  }
  return nodes;
}

int gauss_points_for_degree(int degree) { return std::max(1, (degree + 2) / 2); }

double QuadratureRule::measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void QuadratureRule::append(const QuadratureRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

double SurfaceQuadratureRule::measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void SurfaceQuadratureRule::append(const SurfaceQuadratureRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  normals.insert(normals.end(), other.normals.begin(), other.normals.end());
}

QuadratureRule full_cell_rule(const BackgroundMesh& mesh, int cell, int degree) {
  const Rule1D g = gauss_rule_1d(gauss_points_for_degree(degree));
  const Point x0 = mesh.cell_corner(cell);
  const double h = mesh.h;
  QuadratureRule r;
  const std::size_t n = g.nodes.size();
  r.points.reserve(n * n);
  r.weights.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      r.points.push_back(x0 + h * Point(g.nodes[i], g.nodes[j]));
      r.weights.push_back(h * h * g.weights[i] * g.weights[j]);
    }
  }
  return r;
}

namespace {

bool on_side(double v, Side side) { return side == Side::Inside ? v < 0.0 : v > 0.0; }

constexpr int kAxisSamples = 20;

// Picks the height direction: the axis along which the zero set is most
// clearly a graph, measured by min |d phi / d x_k| / |grad phi| over samples.
int height_axis(const BackgroundMesh& mesh, int cell, const LevelSet& phi) {
  const Point x0 = mesh.cell_corner(cell);
  const double h = mesh.h;
  std::array<double, 2> score{2.0, 2.0};
  bool found = false;
  for (int a = 0; a < 2; ++a) {
    for (int s = 0; s < kAxisSamples; ++s) {
      Point p0 = x0, p1 = x0;
      const double off = h * (s + 0.5) / kAxisSamples;
      p0[1 - a] += off;
      p1[1 - a] += off;
      p1[a] += h;
      for (double t : segment_roots(phi, p0, p1, 8)) {
        const Point q = p0 + t * (p1 - p0);
        const Vec2 g = phi.gradient(q);
        const double gn = g.norm();
        if (gn == 0.0) continue;
        found = true;
        for (int k = 0; k < 2; ++k) score[k] = std::min(score[k], std::abs(g[k]) / gn);
      }
    }
  }
  if (!found) return 1;
  const int k = score[0] > score[1] ? 0 : 1;
  if (score[k] < 1e-8)
    throw QuadratureError("cut cell " + std::to_string(cell) + ": no height direction exists");
  return k;
}

struct BaseInterval {
  double lo, hi;
};

// Partition of the base edge at points where the zero set meets the two
// edges orthogonal to the height axis.
std::vector<BaseInterval> base_partition(const BackgroundMesh& mesh, int cell, const LevelSet& phi,
                                         int k) {
  const int b = 1 - k;
  const Point x0 = mesh.cell_corner(cell);
  const double h = mesh.h;
  std::vector<double> cuts{0.0, 1.0};
  for (int e = 0; e < 2; ++e) {
    Point p0 = x0, p1 = x0;
    p0[k] += e * h;
    p1[k] += e * h;
    p1[b] += h;
    for (double t : segment_roots(phi, p0, p1, 16, true)) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<BaseInterval> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = x0[b] + h * cuts[i], hi = x0[b] + h * cuts[i + 1];
    if (hi > lo) out.push_back({lo, hi});
  }
  return out;
}

}  // namespace

QuadratureRule cut_cell_volume_rule(const BackgroundMesh& mesh, int cell, const LevelSet& phi,
                                    Side side, int degree) {
  const int k = height_axis(mesh, cell, phi);
  const int b = 1 - k;
  const double h = mesh.h;
  const Point x0 = mesh.cell_corner(cell);
  const Rule1D gb = gauss_rule_1d(gauss_points_for_degree(degree + 1) + 1);
  const Rule1D gh = gauss_rule_1d(gauss_points_for_degree(degree));
  QuadratureRule r;
  for (const BaseInterval& iv : base_partition(mesh, cell, phi, k)) {
    const double len = iv.hi - iv.lo;
    for (std::size_t q = 0; q < gb.nodes.size(); ++q) {
      Point p0, p1;
      p0[b] = p1[b] = iv.lo + len * gb.nodes[q];
      p0[k] = x0[k];
      p1[k] = x0[k] + h;
      std::vector<double> cuts{0.0};
      for (double t : segment_roots(phi, p0, p1, 8)) cuts.push_back(t);
      cuts.push_back(1.0);
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a0 = cuts[s], a1 = cuts[s + 1];
        if (!(a1 > a0)) continue;
        if (!on_side(phi.value(p0 + 0.5 * (a0 + a1) * (p1 - p0)), side)) continue;
        const double seg = h * (a1 - a0);
        for (std::size_t m = 0; m < gh.nodes.size(); ++m) {
          Point x;
          x[b] = p0[b];
          x[k] = x0[k] + h * (a0 + (a1 - a0) * gh.nodes[m]);
          r.points.push_back(x);
          r.weights.push_back(len * gb.weights[q] * seg * gh.weights[m]);
        }
      }
    }
  }
  return r;
}

SurfaceQuadratureRule cut_cell_surface_rule(const BackgroundMesh& mesh, int cell,
                                            const LevelSet& phi, Side outward_from, int degree) {
  const int k = height_axis(mesh, cell, phi);
  const int b = 1 - k;
  const double h = mesh.h;
  const Point x0 = mesh.cell_corner(cell);
  const Rule1D gb = gauss_rule_1d(gauss_points_for_degree(degree + 1) + 1);
  const double orient = outward_from == Side::Inside ? 1.0 : -1.0;
  SurfaceQuadratureRule r;
  for (const BaseInterval& iv : base_partition(mesh, cell, phi, k)) {
    const double len = iv.hi - iv.lo;
    for (std::size_t q = 0; q < gb.nodes.size(); ++q) {
      Point p0, p1;
      p0[b] = p1[b] = iv.lo + len * gb.nodes[q];
      p0[k] = x0[k];
      p1[k] = x0[k] + h;
      for (double t : segment_roots(phi, p0, p1, 8)) {
        if (t <= 0.0 || t >= 1.0) continue;
        const Point x = p0 + t * (p1 - p0);
        const Vec2 g = phi.gradient(x);
        const double gn = g.norm();
        if (std::abs(g[k]) < 1e-14 * gn) continue;
        r.points.push_back(x);
        r.weights.push_back(len * gb.weights[q] * gn / std::abs(g[k]));
        r.normals.push_back(orient * g / gn);
      }
    }
  }
  return r;
}

SurfaceQuadratureRule aligned_face_rule(const Point& a, const Point& b, const Vec2& normal,
                                        int degree, const LevelSet* phi, Side side) {
  const Rule1D g = gauss_rule_1d(gauss_points_for_degree(degree));
  const double length = (b - a).norm();
  std::vector<double> cuts{0.0};
  if (phi) {
    for (double t : segment_roots(*phi, a, b, 16, true)) cuts.push_back(t);
  }
  cuts.push_back(1.0);
  SurfaceQuadratureRule r;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double t0 = cuts[s], t1 = cuts[s + 1];
    if (!(t1 > t0)) continue;
    if (phi && !on_side(phi->value(a + 0.5 * (t0 + t1) * (b - a)), side)) continue;
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      r.points.push_back(a + (t0 + (t1 - t0) * g.nodes[q]) * (b - a));
      r.weights.push_back(length * (t1 - t0) * g.weights[q]);
      r.normals.push_back(normal);
    }
  }
  return r;
}

QuadratureRule cell_rule(const BackgroundMesh& mesh, int cell, CellLocation location,
                         const LevelSet& phi, Side side, int degree) {
  if (location == CellLocation::Cut) return cut_cell_volume_rule(mesh, cell, phi, side, degree);
  const bool inside = location == CellLocation::Negative;
  if (inside == (side == Side::Inside)) return full_cell_rule(mesh, cell, degree);
  return {};
}

}  // namespace cutfem
