#pragma once

#include <vector>

#include "cutfem/types.hpp"

namespace cutfem {

/// 1D Lagrange polynomials on the p + 1 Gauss-Lobatto nodes of [0, 1],
/// stored as monomial coefficients so derivatives of any order are exact.
class LagrangeBasis1D {
 public:
  explicit LagrangeBasis1D(int p);

  int order() const { return p_; }
  int size() const { return p_ + 1; }
  const std::vector<double>& nodes() const { return nodes_; }

  /// d^k l_a / dxi^k at xi, for all a.
  void eval(double xi, int k, double* out) const;
  double eval(int a, double xi, int k) const;

 private:
  int p_;
  std::vector<double> nodes_;
  std::vector<std::vector<double>> coeffs_;  // coeffs_[a][m] multiplies xi^m
};

/// Values and physical gradients of the (p+1)^2 scalar shape functions.
/// Local scalar node j = b * (p + 1) + a with a the x index, b the y index.
struct ShapeValues {
  std::vector<double> value;
  std::vector<Vec2> grad;
};

/// Tensor-product Q_p basis on a square cell of side h. Vector-valued
/// local DoF index is 2 * j + component.
class ElementBasis {
 public:
  ElementBasis(int p, double h);

  int order() const { return line_.order(); }
  double h() const { return h_; }
  int num_nodes() const { return n1_ * n1_; }
  int num_dofs() const { return 2 * num_nodes(); }
  const LagrangeBasis1D& line() const { return line_; }

  /// xi in reference coordinates [0,1]^2 (the closure of the full cell).
  ShapeValues shape_eval(const Point& xi) const;
  void shape_eval(const Point& xi, ShapeValues& out) const;

  /// k-th derivative along the coordinate direction `axis` (the face normal)
  /// of every scalar shape function at reference point xi, in physical units
  /// (scaled by h^-k). Requires 1 <= k <= p.
  std::vector<double> normal_derivative(const Point& xi, int axis, int k) const;

 private:
  LagrangeBasis1D line_;
  double h_;
  int n1_;
};

}  // namespace cutfem
