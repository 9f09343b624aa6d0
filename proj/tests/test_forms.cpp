#include <doctest.h>

#include <cmath>
#include <random>

#include "cutfem/dofmap.hpp"
#include "cutfem/forms.hpp"
#include "cutfem/geometry.hpp"

using namespace cutfem;

namespace {

// Local coefficients of a field by nodal interpolation on one cell.
Eigen::VectorXd local_coeffs(const ElementBasis& b, const BackgroundMesh& mesh, int cell,
                             const std::function<Vec2(const Point&)>& f) {
  const auto& n = b.line().nodes();
  const int n1 = b.order() + 1;
  Eigen::VectorXd c(b.num_dofs());
  for (int bj = 0; bj < n1; ++bj)
    for (int a = 0; a < n1; ++a) {
      const Vec2 v = f(mesh.to_physical(cell, Point(n[a], n[bj])));
      c[2 * (bj * n1 + a)] = v.x();
      c[2 * (bj * n1 + a) + 1] = v.y();
    }
  return c;
}

double rel_asym(const Eigen::MatrixXd& a) { return (a - a.transpose()).norm() / a.norm(); }

}  // namespace

TEST_CASE("strain and stress") {
  Mat2 g;
  g << 0, 1, 0, 0;
  Mat2 e = strain(g);
  CHECK(e(0, 1) == 0.5);
  CHECK(e(1, 0) == 0.5);
  CHECK(e(0, 0) == 0.0);
  g << 0, 1, -1, 0;
  CHECK(strain(g).norm() == 0.0);
  g << 2, 0, 0, 3;
  CHECK(strain(g) == g);
  const Material sand = kSandstone;
  const Mat2 s = stress(Mat2::Identity(), sand);
  CHECK(s(0, 0) == doctest::Approx(4.2858));
  CHECK(s(1, 1) == doctest::Approx(4.2858));
  CHECK(s(0, 1) == 0.0);
  g << 0, 1, 1, 0;
  const Mat2 shear = stress(g, Material{1.0, 7.0, 1.5});
  CHECK(shear(0, 1) == doctest::Approx(3.0));
  CHECK(shear(0, 0) == 0.0);
  CHECK(stress(Mat2::Zero(), sand).norm() == 0.0);
}

TEST_CASE("materials and penalty parameters") {
  CHECK(kSandstone.cp() == doctest::Approx(1.77282).epsilon(1e-5));
  CHECK(kGranite.cp() == doctest::Approx(2.36111).epsilon(1e-5));
  CHECK(kGranite.cs() == doctest::Approx(1.27034).epsilon(1e-5));
  CHECK(kSandstone.cp() > kSandstone.cs());
  CHECK_THROWS_AS((Material{0.0, 1.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((Material{1.0, -1.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((Material{1.0, 1.0, 0.0}.validate()), ConfigError);

  const PenaltyConfig single = PenaltyConfig::defaults(2, kSandstone);
  CHECK(single.gamma_D == 20.0);
  CHECK(single.gamma_M[0] == 0.25);
  CHECK(single.gamma_A[0] == doctest::Approx(3.1429 / 2.0));
  const PenaltyConfig two = PenaltyConfig::defaults(3, kSandstone, &kGranite);
  const double e1 = 3.1429, e2 = 6.2182;
  CHECK(two.kappa[0] == doctest::Approx(0.66426).epsilon(1e-5));
  CHECK(two.kappa[0] + two.kappa[1] == doctest::Approx(1.0));
  CHECK(two.gamma_I == doctest::Approx(20.0 * 9 * e1 * e2 / (e1 + e2)));
  CHECK(two.gamma_M[1] == doctest::Approx(1.1154 / 4.0));
  CHECK(two.gamma_A[1] == doctest::Approx(e2 / 2.0));

  PenaltyOverrides o;
  o.gamma_D = 7.0;
  o.kappa1 = 0.25;
  o.gamma_A[1] = 0.0;
  const PenaltyConfig ov = PenaltyConfig::with_overrides(1, kSandstone, &kGranite, o);
  CHECK(ov.gamma_D == 7.0);
  CHECK(ov.kappa[1] == doctest::Approx(0.75));
  CHECK(ov.gamma_A[1] == 0.0);
  o.kappa1 = 1.5;
  CHECK_THROWS_AS(PenaltyConfig::with_overrides(1, kSandstone, &kGranite, o), ConfigError);
}

TEST_CASE("bulk form") {
  const BackgroundMesh mesh({0.0, 0.0}, 1.0, 1, 1);
  const QuadratureRule rule = full_cell_rule(mesh, 0, 4);
  const Material m{1.0, 1.0, 1.0};
  const ElementBasis q1(1, 1.0);
  const LocalMatrix b = forms::bulk(q1, mesh, 0, rule, m);
  CHECK(rel_asym(b) < 1e-14);
  const auto c = local_coeffs(q1, mesh, 0, [](const Point&) { return Vec2(1.0, 2.0); });
  CHECK(std::abs(c.dot(b * c)) < 1e-14);
  const auto rot = local_coeffs(q1, mesh, 0, [](const Point& x) { return Vec2(-x.y(), x.x()); });
  CHECK(std::abs(rot.dot(b * rot)) < 1e-12);
  const auto ux = local_coeffs(q1, mesh, 0, [](const Point& x) { return Vec2(x.x(), 0.0); });
  CHECK(ux.dot(b * ux) == doctest::Approx(3.0).epsilon(1e-13));
  // Positive semidefinite with exactly three rigid modes on an uncut cell.
  for (int p = 1; p <= 3; ++p) {
    const ElementBasis bp(p, 1.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(forms::bulk(bp, mesh, 0, full_cell_rule(mesh, 0, 2 * p), kGranite));
    CHECK(es.eigenvalues()[0] > -1e-12);
    CHECK(std::abs(es.eigenvalues()[2]) < 1e-11);
    CHECK(es.eigenvalues()[3] > 1e-3);
  }
  // Linear in mu and lambda separately.
  const LocalMatrix bm = forms::bulk(q1, mesh, 0, rule, {1.0, 0.0, 1.0});
  const LocalMatrix bl = forms::bulk(q1, mesh, 0, rule, {1.0, 1.0, 1.0}) - bm;
  CHECK((forms::bulk(q1, mesh, 0, rule, {1.0, 2.5, 0.7}) - (0.7 * bm + 2.5 * bl)).norm() < 1e-12);
}

TEST_CASE("mass form") {
  const BackgroundMesh mesh({0.0, 0.0}, 0.5, 2, 1);
  const ElementBasis b(2, 0.5);
  const auto ones = local_coeffs(b, mesh, 1, [](const Point&) { return Vec2(1.0, 0.0); });
  const LocalMatrix m1 = forms::mass(b, mesh, 1, full_cell_rule(mesh, 1, 6), 1.0);
  CHECK(ones.dot(m1 * ones) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rel_asym(m1) < 1e-15);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m1).eigenvalues()[0] > 0.0);
  CHECK((forms::mass(b, mesh, 1, full_cell_rule(mesh, 1, 6), 2.0) - 2.0 * m1).norm() < 1e-15);
  const HalfPlaneLevelSet phi(0.5 + 0.3 * 0.5, 0);
  const QuadratureRule cut = cut_cell_volume_rule(mesh, 1, phi, Side::Inside, 6);
  const LocalMatrix mc = forms::mass(b, mesh, 1, cut, 1.3);
  CHECK(ones.dot(mc * ones) == doctest::Approx(0.3 * 0.25 * 1.3).epsilon(1e-12));
}

TEST_CASE("ghost penalty") {
  CHECK(forms::ghost_penalty_weight(1.0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(forms::ghost_penalty_weight(2.0, 2) == doctest::Approx(32.0 / 20.0));
  CHECK(forms::ghost_penalty_weight(1.0, 3) == doctest::Approx(1.0 / (7.0 * 36.0)));

  // p = 1: u = x on the left cell and 2x on the right cell of a vertical face.
  for (double h : {1.0, 0.5, 2.0}) {
    const BackgroundMesh mesh({0.0, 0.0}, h, 2, 1);
    const ElementBasis b(1, h);
    const InteriorFace f{0, 1, 0};
    const LocalMatrix j = forms::ghost_penalty(b, mesh, f);
    Eigen::VectorXd u(2 * b.num_dofs());
    u << local_coeffs(b, mesh, 0, [](const Point& x) { return Vec2(x.x(), 0.0); }),
        local_coeffs(b, mesh, 1, [](const Point& x) { return Vec2(2.0 * x.x(), 0.0); });
    CHECK(u.dot(j * u) == doctest::Approx(std::pow(h, 4) / 3.0).epsilon(1e-13));
    CHECK(rel_asym(j) < 1e-15);
    const Eigen::VectorXd um = u.head(b.num_dofs()), up = u.tail(b.num_dofs());
    CHECK(forms::ghost_penalty_energy(b, mesh, f, um, up) == doctest::Approx(std::pow(h, 4) / 3.0).epsilon(1e-13));
    // Doubling h multiplies the k = 1 term of a unit jump by 2^4.
    if (h == 1.0) {
      const BackgroundMesh m2({0.0, 0.0}, 2.0, 2, 1);
      const ElementBasis b2(1, 2.0);
      Eigen::VectorXd u2(2 * b2.num_dofs());
      u2 << local_coeffs(b2, m2, 0, [](const Point& x) { return Vec2(x.x(), 0.0); }),
          local_coeffs(b2, m2, 1, [](const Point& x) { return Vec2(2.0 * x.x() - 2.0, 0.0); });
      CHECK(u2.dot(forms::ghost_penalty(b2, m2, f) * u2) == doctest::Approx(16.0 * u.dot(j * u)));
    }
  }

  // Global polynomials of degree <= p carry no ghost-penalty energy.
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  for (int p = 1; p <= 3; ++p) {
    const BackgroundMesh mesh({0.3, -0.2}, 0.4, 1, 2);
    const ElementBasis b(p, mesh.h);
    const LocalMatrix j = forms::ghost_penalty(b, mesh, {0, 1, 1});
    for (int t = 0; t < 20; ++t) {
      std::vector<double> a(2 * (p + 1) * (p + 1));
      for (double& v : a) v = nd(rng);
      auto f = [&](const Point& x) {
        Vec2 r = Vec2::Zero();
        int k = 0;
        for (int i = 0; i <= p; ++i)
          for (int l = 0; l <= p; ++l, k += 2)
            r += Vec2(a[k], a[k + 1]) * std::pow(x.x(), i) * std::pow(x.y(), l);
        return r;
      };
      Eigen::VectorXd u(2 * b.num_dofs());
      u << local_coeffs(b, mesh, 0, f), local_coeffs(b, mesh, 1, f);
      const Eigen::VectorXd um = u.head(b.num_dofs()), up = u.tail(b.num_dofs());
      CHECK(forms::ghost_penalty_energy(b, mesh, {0, 1, 1}, um, up) / u.squaredNorm() <= 1e-20);
      // Through the matrix the cancellation happens after squaring: roundoff times |J|.
      CHECK(std::abs(u.dot(j * u)) / u.squaredNorm() <= 1e-14 * j.norm());
    }
    // Positive semidefinite.
    for (int t = 0; t < 1000; ++t) {
      Eigen::VectorXd v(j.rows());
      for (int i = 0; i < v.size(); ++i) v[i] = nd(rng);
      CHECK(v.dot(j * v) >= -1e-14 * v.squaredNorm());
    }
  }
}

TEST_CASE("Nitsche Dirichlet form and load") {
  const BackgroundMesh mesh({0.0, 0.0}, 0.5, 2, 2);
  const CircleLevelSet phi({0.0, 0.0}, 0.6);
  const int cell = 0;
  const ElementBasis b(2, mesh.h);
  const SurfaceQuadratureRule gamma = cut_cell_surface_rule(mesh, cell, phi, Side::Inside, 6);
  const Material m = kGranite;
  const LocalMatrix d = forms::nitsche_dirichlet(b, mesh, cell, gamma, m, 20.0);
  CHECK(rel_asym(d) < 1e-12);

  // gamma_D = 0: D(v, v) = -2 <sigma(v) n, v>, evaluated with exact polynomial fields.
  auto v = [](const Point& x) { return Vec2(x.x() * x.y() + 0.2, x.x() - x.y() * x.y()); };
  auto grad_v = [](const Point& x) {
    Mat2 g;
    g << x.y(), x.x(), 1.0, -2.0 * x.y();
    return g;
  };
  const auto cv = local_coeffs(b, mesh, cell, v);
  const LocalMatrix d0 = forms::nitsche_dirichlet(b, mesh, cell, gamma, m, 0.0);
  double oracle = 0.0;
  for (std::size_t q = 0; q < gamma.size(); ++q)
    oracle -= 2.0 * gamma.weights[q] * (stress(grad_v(gamma.points[q]), m) * gamma.normals[q]).dot(v(gamma.points[q]));
  CHECK(cv.dot(d0 * cv) == doctest::Approx(oracle).epsilon(1e-12));

  // Constant u = c: only the penalty survives on the u side.
  const Vec2 c(0.7, -0.4);
  const auto cc = local_coeffs(b, mesh, cell, [&](const Point&) { return c; });
  const double pen = 20.0 / mesh.h;
  double expect = 0.0;
  for (std::size_t q = 0; q < gamma.size(); ++q) {
    const Vec2 n = gamma.normals[q], x = v(gamma.points[q]);
    expect += gamma.weights[q] * (pen * (2 * m.mu * c.dot(x) + m.lambda * c.dot(n) * x.dot(n)) -
                                  c.dot(stress(grad_v(gamma.points[q]), m) * n));
  }
  CHECK(cv.dot(d * cc) == doctest::Approx(expect).epsilon(1e-12));

  // Load with g equal to the trace of a discrete field w reproduces the
  // penalty and symmetric consistency terms of D applied to w, i.e. D w + <sigma(w) n, v>.
  auto w = [](const Point& x) { return Vec2(std::pow(x.x(), 2) - x.y(), 0.5 * x.x() * x.y()); };
  auto grad_w = [](const Point& x) {
    Mat2 g;
    g << 2.0 * x.x(), -1.0, 0.5 * x.y(), 0.5 * x.x();
    return g;
  };
  const auto cw = local_coeffs(b, mesh, cell, w);
  const LocalVector l = forms::dirichlet_load(b, mesh, cell, gamma, m, 20.0, w);
  const LocalVector flux = forms::body_neumann_load(
      b, mesh, cell, QuadratureRule{}, gamma, {},
      [&](const Point& x) {
        // Rules carry the normal per point; for this circle it is x / |x|.
        return Vec2(stress(grad_w(x), m) * x.normalized());
      });
  const LocalVector lw = d * cw + flux;
  CHECK((l - lw).norm() <= 1e-12 * lw.norm());
  CHECK(forms::dirichlet_load(b, mesh, cell, gamma, m, 20.0, [](const Point&) { return Vec2(0, 0); }).norm() == 0.0);

  // Constant g on an aligned face: <g, sigma(v) n> and the penalty in closed form for Q1.
  const BackgroundMesh one({0.0, 0.0}, 1.0, 1, 1);
  const ElementBasis q1(1, 1.0);
  const SurfaceQuadratureRule left = aligned_face_rule({0.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, 4);
  const Material unit{1.0, 1.0, 1.0};
  const LocalVector lc = forms::dirichlet_load(q1, one, 0, left, unit, 5.0, [](const Point&) { return Vec2(1.0, 0.0); });
  // For v = N_0 e_x (node (0,0)): grad N_0 = (-(1-y), -(1-x)); on x = 0, sigma(v) n . g = -sigma_xx
  // = -(3 * dN/dx) = 3 (1 - y). Integral of -(3 (1 - y)) = -1.5; penalty 5 * 2 * 1/2 + 5 * 1 * 1/2 = 7.5.
  CHECK(lc[0] == doctest::Approx(-1.5 + 7.5).epsilon(1e-14));
}

TEST_CASE("interface form") {
  const BackgroundMesh mesh({0.0, 0.0}, 0.5, 1, 1);
  const HalfPlaneLevelSet phi(0.2, 0, -1);  // domain 1 (phi > 0) on the left
  const ElementBasis b(2, mesh.h);
  const SurfaceQuadratureRule gamma = cut_cell_surface_rule(mesh, 0, phi, Side::Inside, 6);
  for (const Vec2& n : gamma.normals) CHECK((n - Vec2(-1.0, 0.0)).norm() < 1e-15);
  const Material m1 = kSandstone, m2 = kGranite;
  const LocalMatrix I = forms::interface(b, mesh, 0, gamma, m1, m2, 0.66, 0.34, 40.0);
  CHECK(rel_asym(I) < 1e-12);

  auto u = [](const Point& x) { return Vec2(x.x() * x.y(), 1.0 - x.x()); };
  auto v = [](const Point& x) { return Vec2(x.y() * x.y(), x.x() + x.y()); };
  Eigen::VectorXd cu(2 * b.num_dofs()), cv(2 * b.num_dofs());
  cu << local_coeffs(b, mesh, 0, u), local_coeffs(b, mesh, 0, u);
  cv << local_coeffs(b, mesh, 0, v), local_coeffs(b, mesh, 0, v);
  CHECK(std::abs(cu.dot(I * cv)) < 1e-12);

  // kappa1 = 1: the average is the domain-1 traction. Oracle with analytic fields.
  auto u2 = [](const Point& x) { return Vec2(x.y(), x.x() * x.x()); };
  auto gu1 = [](const Point& x) {
    Mat2 g;
    g << x.y(), x.x(), -1.0, 0.0;
    return g;
  };
  auto gv1 = [](const Point& x) {
    Mat2 g;
    g << 0.0, 2.0 * x.y(), 1.0, 1.0;
    return g;
  };
  auto v2 = [](const Point& x) { return Vec2(0.0, x.y()); };
  Eigen::VectorXd a(2 * b.num_dofs()), c(2 * b.num_dofs());
  a << local_coeffs(b, mesh, 0, u), local_coeffs(b, mesh, 0, u2);
  c << local_coeffs(b, mesh, 0, v), local_coeffs(b, mesh, 0, v2);
  const double gI = 40.0, h = mesh.h;
  double oracle = 0.0;
  for (std::size_t q = 0; q < gamma.size(); ++q) {
    const Point& x = gamma.points[q];
    const Vec2 n = gamma.normals[q];
    const Vec2 ju = u2(x) - u(x), jv = v2(x) - v(x);
    oracle += gamma.weights[q] * (-(stress(gu1(x), m1) * n).dot(jv) - ju.dot(stress(gv1(x), m1) * n) +
                                  gI / h * ju.dot(jv));
  }
  const LocalMatrix I1 = forms::interface(b, mesh, 0, gamma, m1, m2, 1.0, 0.0, gI);
  CHECK(a.dot(I1 * c) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("body and Neumann loads") {
  const BackgroundMesh mesh({0.0, 0.0}, 0.5, 1, 1);
  const ElementBasis b(1, mesh.h);
  const QuadratureRule vol = full_cell_rule(mesh, 0, 4);
  const SurfaceQuadratureRule none;
  CHECK(forms::body_neumann_load(b, mesh, 0, vol, none, {}, {}).norm() == 0.0);
  const LocalVector l = forms::body_neumann_load(b, mesh, 0, vol, none,
                                                 [](const Point&) { return Vec2(2.0, -1.0); }, {});
  for (int j = 0; j < 4; ++j) {
    CHECK(l[2 * j] == doctest::Approx(2.0 * 0.0625));
    CHECK(l[2 * j + 1] == doctest::Approx(-0.0625));
  }
  const SurfaceQuadratureRule top = aligned_face_rule({0.0, 0.5}, {0.5, 0.5}, {0.0, 1.0}, 2);
  const LocalVector g = forms::body_neumann_load(b, mesh, 0, QuadratureRule{}, top, {},
                                                 [](const Point&) { return Vec2(0.0, 4.0); });
  // Only the two top nodes see the face; each gets 4 * h / 2.
  CHECK(g[1] == 0.0);
  CHECK(g[5] == doctest::Approx(1.0));
  CHECK(g[7] == doctest::Approx(1.0));
}
