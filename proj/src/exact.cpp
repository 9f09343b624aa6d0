#include "cutfem/exact.hpp"

#include <cmath>

namespace cutfem {

Mat2 ExactSolution::stress(const Point& x, double t, int domain) const {
  return cutfem::stress(gradient(x, t, domain), material(domain));
}

Vec2 ExactSolution::traction(const Point& x, double t, const Vec2& n, int domain) const {
  return stress(x, t, domain) * n;
}

Vec2 ExactSolution::stress_divergence(const Point& x, double t, int domain) const {
  const auto hs = hessian(x, t, domain);
  const Material& m = material(domain);
  Vec2 grad_div;
  for (int i = 0; i < 2; ++i) grad_div[i] = hs[0](i, 0) + hs[1](i, 1);
  Vec2 lap(hs[0].trace(), hs[1].trace());
  return m.mu * lap + (m.mu + m.lambda) * grad_div;
}

Vec2 ExactSolution::body_force(const Point& x, double t, int domain) const {
  return material(domain).rho * acceleration(x, t, domain) - stress_divergence(x, t, domain);
}

PlaneWave::PlaneWave(const Material& m, double omega) : material_(m), omega_(omega) {
  if (!(omega > 0.0)) throw ConfigError("plane wave: omega must be positive");
}

Vec2 PlaneWave::displacement(const Point& x, double t, int) const {
  return Vec2(std::cos(omega_ * (t - x.x() / material_.cp())), 0.0);
}

Vec2 PlaneWave::velocity(const Point& x, double t, int) const {
  return Vec2(-omega_ * std::sin(omega_ * (t - x.x() / material_.cp())), 0.0);
}

Vec2 PlaneWave::acceleration(const Point& x, double t, int) const {
  return Vec2(-omega_ * omega_ * std::cos(omega_ * (t - x.x() / material_.cp())), 0.0);
}

Mat2 PlaneWave::gradient(const Point& x, double t, int) const {
  const double k = omega_ / material_.cp();
  Mat2 g = Mat2::Zero();
  g(0, 0) = k * std::sin(omega_ * t - k * x.x());
  return g;
}

std::array<Mat2, 2> PlaneWave::hessian(const Point& x, double t, int) const {
  const double k = omega_ / material_.cp();
  std::array<Mat2, 2> h{Mat2::Zero(), Mat2::Zero()};
  h[0](0, 0) = -k * k * std::cos(omega_ * t - k * x.x());
  return h;
}

TransmissionCoefficients transmission_coefficients(const Material& m1, const Material& m2) {
  const double z1 = m1.rho * m1.cp(), z2 = m2.rho * m2.cp();
  return {(z1 - z2) / (z1 + z2), 2.0 * z1 / (z1 + z2)};
}

TransmissionSolution::TransmissionSolution(const Material& m1, const Material& m2, double omega,
                                           double interface_x)
    : omega_(omega), xi_(interface_x), materials_{m1, m2},
      coeff_(transmission_coefficients(m1, m2)) {
  if (!(omega > 0.0)) throw ConfigError("transmission solution: omega must be positive");
}

std::array<TransmissionSolution::Wave, 2> TransmissionSolution::waves(int domain, int& count) const {
  const double c1 = materials_[0].cp(), c2 = materials_[1].cp();
  if (domain == 0) {
    count = 2;
    return {Wave{1.0, omega_ / c1, 0.0},
            Wave{coeff_.reflected, -omega_ / c1, -2.0 * omega_ * xi_ / c1}};
  }
  count = 1;
  return {Wave{coeff_.transmitted, omega_ / c2, omega_ * xi_ * (1.0 / c2 - 1.0 / c1)},
          Wave{0.0, 0.0, 0.0}};
}

Vec2 TransmissionSolution::displacement(const Point& x, double t, int domain) const {
  int n = 0;
  const auto w = waves(domain, n);
  double u = 0.0;
  for (int i = 0; i < n; ++i) u += w[i].amplitude * std::cos(omega_ * t - w[i].k * x.x() + w[i].phase);
  return Vec2(u, 0.0);
}

Vec2 TransmissionSolution::velocity(const Point& x, double t, int domain) const {
  int n = 0;
  const auto w = waves(domain, n);
  double u = 0.0;
  for (int i = 0; i < n; ++i)
    u -= w[i].amplitude * omega_ * std::sin(omega_ * t - w[i].k * x.x() + w[i].phase);
  return Vec2(u, 0.0);
}

Vec2 TransmissionSolution::acceleration(const Point& x, double t, int domain) const {
  return -omega_ * omega_ * displacement(x, t, domain);
}

Mat2 TransmissionSolution::gradient(const Point& x, double t, int domain) const {
  int n = 0;
  const auto w = waves(domain, n);
  Mat2 g = Mat2::Zero();
  for (int i = 0; i < n; ++i)
    g(0, 0) += w[i].amplitude * w[i].k * std::sin(omega_ * t - w[i].k * x.x() + w[i].phase);
  return g;
}

std::array<Mat2, 2> TransmissionSolution::hessian(const Point& x, double t, int domain) const {
  int n = 0;
  const auto w = waves(domain, n);
  std::array<Mat2, 2> h{Mat2::Zero(), Mat2::Zero()};
  for (int i = 0; i < n; ++i)
    h[0](0, 0) -= w[i].amplitude * w[i].k * w[i].k * std::cos(omega_ * t - w[i].k * x.x() + w[i].phase);
  return h;
}

Vec2 ManufacturedStatic::displacement(const Point& x, double, int) const {
  return Vec2(std::sin(x.x()) * std::sin(x.y()), std::cos(x.x()) * std::cos(x.y()));
}

Mat2 ManufacturedStatic::gradient(const Point& x, double, int) const {
  const double sx = std::sin(x.x()), cx = std::cos(x.x()), sy = std::sin(x.y()), cy = std::cos(x.y());
  Mat2 g;
  g << cx * sy, sx * cy, -sx * cy, -cx * sy;
  return g;
}

std::array<Mat2, 2> ManufacturedStatic::hessian(const Point& x, double, int) const {
  const double sx = std::sin(x.x()), cx = std::cos(x.x()), sy = std::sin(x.y()), cy = std::cos(x.y());
  Mat2 h0, h1;
  h0 << -sx * sy, cx * cy, cx * cy, -sx * sy;
  h1 << -cx * cy, sx * sy, sx * sy, -cx * cy;
  return {h0, h1};
}

Vec2 finite_difference_residual(const ExactSolution& u, const Point& x, double t, int domain,
                                double d) {
  auto f = [&](double dx, double dy, double dt) {
    return u.displacement(x + Point(dx, dy), t + dt, domain);
  };
  // Fourth-order central stencils.
  auto second = [&](auto&& g) {
    return (-g(2 * d) + 16.0 * g(d) - 30.0 * g(0.0) + 16.0 * g(-d) - g(-2 * d)) / (12.0 * d * d);
  };
  auto first = [&](auto&& g) {
    return (-g(2 * d) + 8.0 * g(d) - 8.0 * g(-d) + g(-2 * d)) / (12.0 * d);
  };
  const Vec2 utt = second([&](double s) { return f(0, 0, s); });
  const Vec2 uxx = second([&](double s) { return f(s, 0, 0); });
  const Vec2 uyy = second([&](double s) { return f(0, s, 0); });
  const Vec2 uxy = first([&](double s) { return first([&](double r) { return f(s, r, 0); }); });
  const Material& m = u.material(domain);
  // div sigma = mu lap u + (mu + lambda) grad div u
  const Vec2 lap = uxx + uyy;
  const Vec2 grad_div(uxx[0] + uxy[1], uxy[0] + uyy[1]);
  return m.rho * utt - (m.mu * lap + (m.mu + m.lambda) * grad_div);
}

}  // namespace cutfem
