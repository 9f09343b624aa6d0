#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "cutfem/basis.hpp"
#include "cutfem/dofmap.hpp"

using namespace cutfem;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Global polynomial of componentwise degree <= p in each variable.
Vec2 poly(const Point& x, int p) {
  double a = 0.0, b = 0.0;
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) {
      a += (0.3 + 0.1 * i - 0.2 * j) * std::pow(x.x(), i) * std::pow(x.y(), j);
      b += (0.1 * i * j - 0.4 + 0.05 * j) * std::pow(x.x(), i) * std::pow(x.y(), j);
    }
  return {a, b};
}

Mat2 poly_grad(const Point& x, int p) {
  Mat2 g = Mat2::Zero();
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) {
      const double ca = 0.3 + 0.1 * i - 0.2 * j, cb = 0.1 * i * j - 0.4 + 0.05 * j;
      const double dx = i ? i * std::pow(x.x(), i - 1) * std::pow(x.y(), j) : 0.0;
      const double dy = j ? j * std::pow(x.x(), i) * std::pow(x.y(), j - 1) : 0.0;
      g(0, 0) += ca * dx;
      g(0, 1) += ca * dy;
      g(1, 0) += cb * dx;
      g(1, 1) += cb * dy;
    }
  return g;
}

std::vector<double> globalize(const std::vector<double>& local, const DofMap& m, int total) {
  std::vector<double> g(total, 0.0);
  for (std::size_t i = 0; i < local.size(); ++i) g[m.offset() + i] = local[i];
  return g;
}

}  // namespace

TEST_CASE("Lagrange basis properties") {
  for (int p = 1; p <= 5; ++p) {
    const LagrangeBasis1D b(p);
    const auto& nodes = b.nodes();
    for (int a = 0; a <= p; ++a)
      for (int k = 0; k <= p; ++k) CHECK(b.eval(a, nodes[k], 0) == doctest::Approx(a == k ? 1.0 : 0.0));
    std::vector<double> v(p + 1), d(p + 1);
    for (double xi : {0.0, 0.17, 0.5, 0.93}) {
      b.eval(xi, 0, v.data());
      b.eval(xi, 1, d.data());
      double s = 0.0, ds = 0.0;
      for (int a = 0; a <= p; ++a) {
        s += v[a];
        ds += d[a];
        const double fd = (b.eval(a, xi + 1e-6, 0) - b.eval(a, xi - 1e-6, 0)) / 2e-6;
        CHECK(d[a] == doctest::Approx(fd).epsilon(1e-6));
      }
      CHECK(std::abs(s - 1.0) < 1e-12);
      CHECK(std::abs(ds) < 1e-10);
    }
  }
}

TEST_CASE("element basis values and gradients") {
  const ElementBasis q1(1, 0.5);
  const ShapeValues c = q1.shape_eval({0.5, 0.5});
  for (double v : c.value) CHECK(v == doctest::Approx(0.25));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 1; p <= 3; ++p) {
    const ElementBasis b(p, 0.7);
    CHECK(b.num_dofs() == 2 * (p + 1) * (p + 1));
    for (int t = 0; t < 50; ++t) {
      const ShapeValues s = b.shape_eval({u(rng), u(rng)});
      double sum = 0.0;
      Vec2 gsum = Vec2::Zero();
      for (int j = 0; j < b.num_nodes(); ++j) {
        sum += s.value[j];
        gsum += s.grad[j];
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(gsum.norm() < 1e-10);
    }
    // Gradients scale as 1/h.
    const ElementBasis b2(p, 1.4);
    const ShapeValues s1 = b.shape_eval({0.3, 0.6}), s2 = b2.shape_eval({0.3, 0.6});
    for (int j = 0; j < b.num_nodes(); ++j) CHECK((s1.grad[j] - 2.0 * s2.grad[j]).norm() < 1e-12);
    CHECK_THROWS_AS(b.normal_derivative({0.0, 0.5}, 0, p + 1), Error);
    CHECK_THROWS_AS(b.normal_derivative({0.0, 0.5}, 0, 0), Error);
  }
}

TEST_CASE("full mesh DoF counts") {
  const BackgroundMesh mesh = BackgroundMesh::square(0.0, 1.0, 9);
  std::vector<int> all(81);
  for (int c = 0; c < 81; ++c) all[c] = c;
  CHECK(DofMap(mesh, 1, all).num_dofs() == 200);
  CHECK(DofMap(mesh, 2, all).num_dofs() == 2 * 19 * 19);
  const BackgroundMesh one({0.0, 0.0}, 1.0, 1, 1);
  CHECK(DofMap(one, 3, {0}).num_dofs() == 32);
}

TEST_CASE("interface DoF doubling matches node enumeration") {
  const BackgroundMesh mesh = BackgroundMesh::square(0.0, 1.0, 9);
  const HalfPlaneLevelSet phi(4.5 * mesh.h, 0, -1);
  const CutTopology topo = build_topology(mesh, phi, {Side::Inside, Side::Outside});
  for (int p = 1; p <= 3; ++p) {
    const DofMaps maps = build_dofmap(mesh, p, topo, ProblemKind::Interface);
    REQUIRE(maps.maps.size() == 2);
    int expected = 0;
    for (Side s : {Side::Outside, Side::Inside}) {
      std::set<std::pair<int, int>> nodes;
      for (int c : topo.cells_of(s))
        for (int b = 0; b <= p; ++b)
          for (int a = 0; a <= p; ++a) nodes.insert({mesh.cell_ix(c) * p + a, mesh.cell_iy(c) * p + b});
      expected += 2 * static_cast<int>(nodes.size());
    }
    CHECK(maps.total() == expected);
    CHECK(maps.maps[0].offset() == 0);
    CHECK(maps.maps[1].offset() == maps.maps[0].num_dofs());
    CHECK(maps.sides[0] == Side::Outside);
    // Indices contiguous and within range.
    std::set<int> seen;
    for (const DofMap& m : maps.maps)
      for (int c : m.cells())
        for (int d : m.cell_dofs(c)) seen.insert(d);
    CHECK(static_cast<int>(seen.size()) == maps.total());
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == maps.total() - 1);
  }
}

TEST_CASE("interpolation reproduces polynomials and evaluation is continuous") {
  const BackgroundMesh mesh = BackgroundMesh::square(-kPi, 2 * kPi, 12);
  const CircleLevelSet phi({0.0, 0.0}, 1.0);
  const CutTopology topo = build_topology(mesh, phi, {Side::Outside});
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int p = 1; p <= 3; ++p) {
    const DofMaps maps = build_dofmap(mesh, p, topo, ProblemKind::Single, Side::Outside);
    const DofMap& m = maps.maps[0];
    const ElementBasis basis(p, mesh.h);
    const auto coeffs = interpolate([p](const Point& x) { return poly(x, p); }, m);
    int tested = 0;
    while (tested < 100) {
      const Point x(u(rng), u(rng));
      if (!m.is_active(mesh.locate(x))) continue;
      ++tested;
      const FieldSample s = evaluate_field(coeffs, m, basis, x);
      CHECK((s.value - poly(x, p)).norm() <= 1e-10 * (1.0 + poly(x, p).norm()));
      CHECK((s.grad - poly_grad(x, p)).norm() <= 1e-9 * (1.0 + poly_grad(x, p).norm()));
    }
    // Constant field gives equal coefficients.
    const auto cst = interpolate([](const Point&) { return Vec2(2.0, -1.0); }, m);
    for (std::size_t i = 0; i < cst.size(); ++i) CHECK(cst[i] == (i % 2 ? -1.0 : 2.0));
    // Linear reproduction of the x coordinate.
    const auto xs = interpolate([](const Point& x) { return Vec2(x.x(), 0.0); }, m);
    const Point y(2.0, 2.5);
    const FieldSample sx = evaluate_field(xs, m, basis, y);
    CHECK((sx.grad.row(0) - Eigen::RowVector2d(1.0, 0.0)).norm() < 1e-12);
    // Continuity across a shared vertical face from either cell.
    const auto sinf = interpolate([](const Point& x) { return Vec2(std::sin(x.x() * x.y()), std::cos(x.y())); }, m);
    const int left = mesh.cell_index(1, 5), right = mesh.cell_index(2, 5);
    for (int k = 0; k < 10; ++k) {
      const Point f = mesh.cell_corner(right) + Point(0.0, mesh.h * (k + 0.5) / 10.0);
      const Vec2 a = evaluate_in_cell(sinf, m, basis, left, f).value;
      const Vec2 b = evaluate_in_cell(sinf, m, basis, right, f).value;
      CHECK((a - b).norm() < 1e-12);
    }
    CHECK_THROWS_AS(evaluate_field(coeffs, m, basis, Point(10.0, 0.0)), Error);
    CHECK_THROWS_AS(evaluate_field(coeffs, m, basis, Point(0.0, 0.0)), Error);
  }
}

TEST_CASE("interpolation error converges at order p + 1") {
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> err;
    for (int n : {8, 16, 32}) {
      const BackgroundMesh mesh = BackgroundMesh::square(0.0, 1.0, n);
      std::vector<int> all(mesh.num_cells());
      for (int c = 0; c < mesh.num_cells(); ++c) all[c] = c;
      const DofMap m(mesh, p, all);
      const ElementBasis basis(p, mesh.h);
      auto f = [](const Point& x) { return Vec2(std::sin(3 * x.x()) * std::cos(2 * x.y()), std::exp(x.x() * x.y())); };
      const auto c = interpolate(f, m);
      double e = 0.0;
      for (int i = 0; i <= 97; ++i)
        for (int j = 0; j <= 97; ++j) {
          const Point x(i / 97.0 * 0.999 + 0.0005, j / 97.0 * 0.999 + 0.0005);
          e = std::max(e, (evaluate_field(c, m, basis, x).value - f(x)).norm());
        }
      err.push_back(e);
    }
    const double rate = std::log2(err[1] / err[2]);
    CHECK(rate > p + 1 - 0.25);
  }
}

TEST_CASE("domain 1 coefficients do not affect domain 2 values") {
  const BackgroundMesh mesh = BackgroundMesh::square(0.0, 1.0, 9);
  const HalfPlaneLevelSet phi(4.5 * mesh.h, 0, -1);
  const CutTopology topo = build_topology(mesh, phi, {Side::Inside, Side::Outside});
  const DofMaps maps = build_dofmap(mesh, 2, topo, ProblemKind::Interface);
  const ElementBasis basis(2, mesh.h);
  auto c = globalize(interpolate([](const Point& x) { return Vec2(x.x(), x.y()); }, maps.maps[1]),
                     maps.maps[1], maps.total());
  const Point x(4.7 * mesh.h, 0.5);
  const Vec2 before = evaluate_field(c, maps.maps[1], basis, x).value;
  for (int i = 0; i < maps.maps[0].num_dofs(); ++i) c[i] = 100.0 + i;
  CHECK(evaluate_field(c, maps.maps[1], basis, x).value == before);
  CHECK((before - Vec2(x.x(), x.y())).norm() < 1e-13);
}

TEST_CASE("normal derivatives on faces") {
  // u = x^2 on Q2: first normal derivative on a vertical face equals 2x.
  const BackgroundMesh mesh({0.5, 0.0}, 0.25, 2, 1);
  const DofMap m(mesh, 2, {0, 1});
  const ElementBasis basis(2, mesh.h);
  const auto c = interpolate([](const Point& x) { return Vec2(x.x() * x.x(), 0.0); }, m);
  const double xf = 0.75;
  for (double eta : {0.0, 0.3, 1.0}) {
    for (int cell : {0, 1}) {
      const Point xi(cell == 0 ? 1.0 : 0.0, eta);
      const auto dofs = m.cell_dofs(cell);
      for (int k = 1; k <= 2; ++k) {
        const auto d = basis.normal_derivative(xi, 0, k);
        double v = 0.0;
        for (int j = 0; j < basis.num_nodes(); ++j) v += d[j] * c[dofs[2 * j]];
        CHECK(v == doctest::Approx(k == 1 ? 2.0 * xf : 2.0).epsilon(1e-11));
      }
    }
  }
  // Jumps of a smooth Q_p field vanish for all k <= p.
  for (int p = 1; p <= 3; ++p) {
    const DofMap mp(mesh, p, {0, 1});
    const ElementBasis bp(p, mesh.h);
    const auto cp = interpolate([p](const Point& x) { return poly(x, p); }, mp);
    const auto d0 = mp.cell_dofs(0), d1 = mp.cell_dofs(1);
    for (int k = 1; k <= p; ++k)
      for (double eta : {0.1, 0.6}) {
        const auto a = bp.normal_derivative({1.0, eta}, 0, k), b = bp.normal_derivative({0.0, eta}, 0, k);
        for (int comp = 0; comp < 2; ++comp) {
          double va = 0.0, vb = 0.0;
          for (int j = 0; j < bp.num_nodes(); ++j) {
            va += a[j] * cp[d0[2 * j + comp]];
            vb += b[j] * cp[d1[2 * j + comp]];
          }
          CHECK(std::abs(va - vb) <= 1e-10 * (1.0 + std::abs(va)));
        }
      }
  }
}
