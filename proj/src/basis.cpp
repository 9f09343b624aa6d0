#include "cutfem/basis.hpp"

#include <cmath>

#include "cutfem/quadrature.hpp"

namespace cutfem {

LagrangeBasis1D::LagrangeBasis1D(int p) : p_(p), nodes_(gauss_lobatto_nodes(p)) {
  const int n = p + 1;
  coeffs_.assign(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    std::vector<double> poly{1.0};
    double denom = 1.0;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t m = 0; m < poly.size(); ++m) {
        next[m + 1] += poly[m];
        next[m] -= nodes_[b] * poly[m];
      }
      poly.swap(next);
      denom *= nodes_[a] - nodes_[b];
    }
    for (int m = 0; m < n; ++m) coeffs_[a][m] = poly[m] / denom;
  }
}

double LagrangeBasis1D::eval(int a, double xi, int k) const {
  const std::vector<double>& c = coeffs_[a];
  double s = 0.0;
  for (int m = p_; m >= k; --m) {
    double f = 1.0;
    for (int r = 0; r < k; ++r) f *= m - r;
    s = s * xi + f * c[m];
  }
  return s;
}

void LagrangeBasis1D::eval(double xi, int k, double* out) const {
  for (int a = 0; a <= p_; ++a) out[a] = eval(a, xi, k);
}

ElementBasis::ElementBasis(int p, double h) : line_(p), h_(h), n1_(p + 1) {}

ShapeValues ElementBasis::shape_eval(const Point& xi) const {
  ShapeValues out;
  shape_eval(xi, out);
  return out;
}

void ElementBasis::shape_eval(const Point& xi, ShapeValues& out) const {
  double vx[8], dx[8], vy[8], dy[8];
  line_.eval(xi.x(), 0, vx);
  line_.eval(xi.x(), 1, dx);
  line_.eval(xi.y(), 0, vy);
  line_.eval(xi.y(), 1, dy);
  const int n = num_nodes();
  out.value.resize(n);
  out.grad.resize(n);
  const double inv_h = 1.0 / h_;
  for (int b = 0; b < n1_; ++b) {
    for (int a = 0; a < n1_; ++a) {
      const int j = b * n1_ + a;
      out.value[j] = vx[a] * vy[b];
      out.grad[j] = Vec2(dx[a] * vy[b], vx[a] * dy[b]) * inv_h;
    }
  }
}

std::vector<double> ElementBasis::normal_derivative(const Point& xi, int axis, int k) const {
  if (k < 1 || k > order()) throw Error("normal_derivative: k must be in [1, p]");
  double dn[8], vt[8];
  const double xn = axis == 0 ? xi.x() : xi.y();
  const double xt = axis == 0 ? xi.y() : xi.x();
  line_.eval(xn, k, dn);
  line_.eval(xt, 0, vt);
  const double scale = std::pow(h_, -k);
  std::vector<double> out(num_nodes());
  for (int b = 0; b < n1_; ++b) {
    for (int a = 0; a < n1_; ++a) {
      const int j = b * n1_ + a;
      out[j] = axis == 0 ? dn[a] * vt[b] * scale : vt[a] * dn[b] * scale;
    }
  }
  return out;
}

}  // namespace cutfem
