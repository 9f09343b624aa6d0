#include "cutfem/forms.hpp"

#include <cmath>
#include <span>

#include "cutfem/kernels.hpp"

namespace cutfem::forms {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::span<double> as_span(RowMajor& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

}  // namespace

Eigen::MatrixXd value_operator(const ShapeValues& sv) {
  const int n = static_cast<int>(sv.value.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2, 2 * n);
  for (int j = 0; j < n; ++j) {
    v(0, 2 * j) = sv.value[j];
    v(1, 2 * j + 1) = sv.value[j];
  }
  return v;
}

Eigen::MatrixXd traction_operator(const ShapeValues& sv, const Material& m, const Vec2& n) {
  const int nn = static_cast<int>(sv.value.size());
  Eigen::MatrixXd t(2, 2 * nn);
  for (int j = 0; j < nn; ++j) {
    const Vec2& g = sv.grad[j];
    const double gn = g.dot(n);
    for (int b = 0; b < 2; ++b) {
      // sigma(N_j e_b) n, component r
      for (int r = 0; r < 2; ++r) {
        t(r, 2 * j + b) = m.mu * ((r == b ? gn : 0.0) + n[b] * g[r]) + m.lambda * g[b] * n[r];
      }
    }
  }
  return t;
}

LocalMatrix bulk(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                 const QuadratureRule& rule, const Material& m) {
  const int nd = basis.num_dofs(), nn = basis.num_nodes();
  RowMajor k = RowMajor::Zero(nd, nd);
  // C = L^T L in Voigt notation (xx, yy, xy with engineering shear).
  Eigen::Matrix3d c;
  c << m.lambda + 2 * m.mu, m.lambda, 0, m.lambda, m.lambda + 2 * m.mu, 0, 0, 0, m.mu;
  const Eigen::Matrix3d l = c.llt().matrixU();
  RowMajor b(3, nd), g(3, nd);
  ShapeValues sv;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.shape_eval(mesh.to_reference(cell, rule.points[q]), sv);
    b.setZero();
    for (int j = 0; j < nn; ++j) {
      const Vec2& d = sv.grad[j];
      b(0, 2 * j) = d.x();
      b(1, 2 * j + 1) = d.y();
      b(2, 2 * j) = d.y();
      b(2, 2 * j + 1) = d.x();
    }
    g.noalias() = l * b;
    kernels::gram_accumulate(as_span(k), nd, {g.data(), static_cast<std::size_t>(g.size())}, 3,
                             rule.weights[q]);
  }
  return k;
}

LocalMatrix mass(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                 const QuadratureRule& rule, double rho) {
  const int nd = basis.num_dofs(), nn = basis.num_nodes();
  RowMajor k = RowMajor::Zero(nd, nd);
  RowMajor v = RowMajor::Zero(2, nd);
  ShapeValues sv;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.shape_eval(mesh.to_reference(cell, rule.points[q]), sv);
    for (int j = 0; j < nn; ++j) {
      v(0, 2 * j) = sv.value[j];
      v(1, 2 * j + 1) = sv.value[j];
    }
    kernels::gram_accumulate(as_span(k), nd, {v.data(), static_cast<std::size_t>(v.size())}, 2,
                             rho * rule.weights[q]);
  }
  return k;
}

double ghost_penalty_weight(double h, int k) {
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::pow(h, 2 * k + 1) / ((2.0 * k + 1.0) * fact * fact);
}

LocalMatrix ghost_penalty(const ElementBasis& basis, const BackgroundMesh& mesh,
                          const InteriorFace& face) {
  const int p = basis.order();
  const int nd = basis.num_dofs(), nn = basis.num_nodes();
  const double h = mesh.h;
  const Rule1D g = gauss_rule_1d(p + 1);
  RowMajor k = RowMajor::Zero(2 * nd, 2 * nd);
  RowMajor jump(2, 2 * nd);
  for (std::size_t q = 0; q < g.nodes.size(); ++q) {
    const double s = g.nodes[q];
    // Reference coordinates on the face seen from each side.
    const Point xi_minus = face.axis == 0 ? Point(1.0, s) : Point(s, 1.0);
    const Point xi_plus = face.axis == 0 ? Point(0.0, s) : Point(s, 0.0);
    for (int order = 1; order <= p; ++order) {
      const std::vector<double> dm = basis.normal_derivative(xi_minus, face.axis, order);
      const std::vector<double> dp = basis.normal_derivative(xi_plus, face.axis, order);
      jump.setZero();
      for (int j = 0; j < nn; ++j) {
        for (int c = 0; c < 2; ++c) {
          jump(c, 2 * j + c) = -dm[j];
          jump(c, nd + 2 * j + c) = dp[j];
        }
      }
      kernels::gram_accumulate(as_span(k), 2 * nd,
                               {jump.data(), static_cast<std::size_t>(jump.size())}, 2,
                               ghost_penalty_weight(h, order) * h * g.weights[q]);
    }
  }
  return k;
}

double ghost_penalty_energy(const ElementBasis& basis, const BackgroundMesh& mesh,
                            const InteriorFace& face, const LocalVector& minus,
                            const LocalVector& plus) {
  const int p = basis.order();
  const int nn = basis.num_nodes();
  const double h = mesh.h;
  const Rule1D g = gauss_rule_1d(p + 1);
  double total = 0.0;
  for (std::size_t q = 0; q < g.nodes.size(); ++q) {
    const double s = g.nodes[q];
    const Point xi_minus = face.axis == 0 ? Point(1.0, s) : Point(s, 1.0);
    const Point xi_plus = face.axis == 0 ? Point(0.0, s) : Point(s, 0.0);
    for (int order = 1; order <= p; ++order) {
      const std::vector<double> dm = basis.normal_derivative(xi_minus, face.axis, order);
      const std::vector<double> dp = basis.normal_derivative(xi_plus, face.axis, order);
      Vec2 jump = Vec2::Zero();
      for (int j = 0; j < nn; ++j)
        for (int c = 0; c < 2; ++c) jump[c] += dp[j] * plus[2 * j + c] - dm[j] * minus[2 * j + c];
      total += ghost_penalty_weight(h, order) * h * g.weights[q] * jump.squaredNorm();
    }
  }
  return total;
}

LocalMatrix nitsche_dirichlet(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                              const SurfaceQuadratureRule& rule, const Material& m,
                              double gamma_D) {
  const int nd = basis.num_dofs();
  LocalMatrix k = LocalMatrix::Zero(nd, nd);
  const double pen = gamma_D / mesh.h;
  ShapeValues sv;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.shape_eval(mesh.to_reference(cell, rule.points[q]), sv);
    const Vec2& n = rule.normals[q];
    const Eigen::MatrixXd v = value_operator(sv);
    const Eigen::MatrixXd t = traction_operator(sv, m, n);
    const Eigen::RowVectorXd vn = n.transpose() * v;
    const double w = rule.weights[q];
    k.noalias() -= w * (v.transpose() * t + t.transpose() * v);
    k.noalias() += w * pen * (2.0 * m.mu * v.transpose() * v + m.lambda * vn.transpose() * vn);
  }
  return k;
}

LocalVector dirichlet_load(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                           const SurfaceQuadratureRule& rule, const Material& m, double gamma_D,
                           const PointField& g) {
  const int nd = basis.num_dofs();
  LocalVector f = LocalVector::Zero(nd);
  const double pen = gamma_D / mesh.h;
  ShapeValues sv;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.shape_eval(mesh.to_reference(cell, rule.points[q]), sv);
    const Vec2& n = rule.normals[q];
    const Vec2 gv = g(rule.points[q]);
    const Eigen::MatrixXd v = value_operator(sv);
    const Eigen::MatrixXd t = traction_operator(sv, m, n);
    const double w = rule.weights[q];
    f.noalias() -= w * t.transpose() * gv;
    f.noalias() += w * pen * (2.0 * m.mu * v.transpose() * gv + m.lambda * gv.dot(n) * (v.transpose() * n));
  }
  return f;
}

LocalMatrix interface(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                      const SurfaceQuadratureRule& rule, const Material& m1, const Material& m2,
                      double kappa1, double kappa2, double gamma_I) {
  const int nd = basis.num_dofs();
  LocalMatrix k = LocalMatrix::Zero(2 * nd, 2 * nd);
  const double pen = gamma_I / mesh.h;
  ShapeValues sv;
  Eigen::MatrixXd jump(2, 2 * nd), avg(2, 2 * nd);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.shape_eval(mesh.to_reference(cell, rule.points[q]), sv);
    const Vec2& n = rule.normals[q];
    const Eigen::MatrixXd v = value_operator(sv);
    jump << -v, v;
    avg << kappa1 * traction_operator(sv, m1, n), kappa2 * traction_operator(sv, m2, n);
    const double w = rule.weights[q];
    k.noalias() -= w * (jump.transpose() * avg + avg.transpose() * jump);
    k.noalias() += w * pen * jump.transpose() * jump;
  }
  return k;
}

LocalVector body_neumann_load(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                              const QuadratureRule& volume, const SurfaceQuadratureRule& surface,
                              const PointField& f, const PointField& g) {
  const int nd = basis.num_dofs(), nn = basis.num_nodes();
  LocalVector out = LocalVector::Zero(nd);
  ShapeValues sv;
  auto add = [&](const Point& x, double w, const Vec2& val) {
    basis.shape_eval(mesh.to_reference(cell, x), sv);
    for (int j = 0; j < nn; ++j) {
      out[2 * j] += w * sv.value[j] * val.x();
      out[2 * j + 1] += w * sv.value[j] * val.y();
    }
  };
  if (f)
    for (std::size_t q = 0; q < volume.size(); ++q) add(volume.points[q], volume.weights[q], f(volume.points[q]));
  if (g)
    for (std::size_t q = 0; q < surface.size(); ++q)
      add(surface.points[q], surface.weights[q], g(surface.points[q]));
  return out;
}

}  // namespace cutfem::forms
