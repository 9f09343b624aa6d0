#pragma once

#include <array>
#include <memory>

#include "cutfem/material.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

/// Closed-form displacement field. Piecewise solutions select their piece
/// by domain index (0 = domain 1, 1 = domain 2), not by position, so that
/// both traces on an interface can be evaluated.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;

  virtual Vec2 displacement(const Point& x, double t, int domain = 0) const = 0;
  virtual Vec2 velocity(const Point& x, double t, int domain = 0) const = 0;
  virtual Vec2 acceleration(const Point& x, double t, int domain = 0) const = 0;
  /// grad(r, c) = d u_r / d x_c
  virtual Mat2 gradient(const Point& x, double t, int domain = 0) const = 0;
  /// hessian[r](a, b) = d^2 u_r / d x_a d x_b
  virtual std::array<Mat2, 2> hessian(const Point& x, double t, int domain = 0) const = 0;
  virtual const Material& material(int domain = 0) const = 0;

  Mat2 stress(const Point& x, double t, int domain = 0) const;
  Vec2 traction(const Point& x, double t, const Vec2& n, int domain = 0) const;
  /// div sigma(u) from the analytic second derivatives.
  Vec2 stress_divergence(const Point& x, double t, int domain = 0) const;
  /// f = rho u_tt - div sigma(u); zero for true wave solutions.
  Vec2 body_force(const Point& x, double t, int domain = 0) const;
};

/// Pressure wave cos(omega (t - x / c_p)) e_x travelling in +x.
class PlaneWave final : public ExactSolution {
 public:
  PlaneWave(const Material& m, double omega);

  Vec2 displacement(const Point& x, double t, int domain = 0) const override;
  Vec2 velocity(const Point& x, double t, int domain = 0) const override;
  Vec2 acceleration(const Point& x, double t, int domain = 0) const override;
  Mat2 gradient(const Point& x, double t, int domain = 0) const override;
  std::array<Mat2, 2> hessian(const Point& x, double t, int domain = 0) const override;
  const Material& material(int = 0) const override { return material_; }
  double omega() const { return omega_; }

 private:
  Material material_;
  double omega_;
};

/// Reflection and transmission coefficients of a normally incident P wave
/// at a flat interface, from displacement and traction continuity.
struct TransmissionCoefficients {
  double reflected;
  double transmitted;
};
TransmissionCoefficients transmission_coefficients(const Material& m1, const Material& m2);

/// Incident plus reflected P wave in domain 1 (x < x_I), transmitted wave in
/// domain 2 (x > x_I). Satisfies [u] = 0 and [sigma(u) n] = 0 on x = x_I.
class TransmissionSolution final : public ExactSolution {
 public:
  TransmissionSolution(const Material& m1, const Material& m2, double omega, double interface_x);

  Vec2 displacement(const Point& x, double t, int domain = 0) const override;
  Vec2 velocity(const Point& x, double t, int domain = 0) const override;
  Vec2 acceleration(const Point& x, double t, int domain = 0) const override;
  Mat2 gradient(const Point& x, double t, int domain = 0) const override;
  std::array<Mat2, 2> hessian(const Point& x, double t, int domain = 0) const override;
  const Material& material(int domain = 0) const override { return materials_[domain]; }
  const TransmissionCoefficients& coefficients() const { return coeff_; }
  double interface_x() const { return xi_; }

 private:
  struct Wave {
    double amplitude, k, phase;
  };
  std::array<Wave, 2> waves(int domain, int& count) const;
  double omega_, xi_;
  std::array<Material, 2> materials_;
  TransmissionCoefficients coeff_;
};

/// Time-independent u = (sin x sin y, cos x cos y) for static solves.
class ManufacturedStatic final : public ExactSolution {
 public:
  explicit ManufacturedStatic(const Material& m) : material_(m) {}

  Vec2 displacement(const Point& x, double t, int domain = 0) const override;
  Vec2 velocity(const Point&, double, int = 0) const override { return Vec2::Zero(); }
  Vec2 acceleration(const Point&, double, int = 0) const override { return Vec2::Zero(); }
  Mat2 gradient(const Point& x, double t, int domain = 0) const override;
  std::array<Mat2, 2> hessian(const Point& x, double t, int domain = 0) const override;
  const Material& material(int = 0) const override { return material_; }

 private:
  Material material_;
};

/// |rho u_tt - div sigma(u)| at (x, t), with every derivative taken by
/// fourth-order central differences of the displacement alone.
Vec2 finite_difference_residual(const ExactSolution& u, const Point& x, double t, int domain,
                                double step = 1e-2);

}  // namespace cutfem
