#include "cutfem/material.hpp"

#include <cmath>

namespace cutfem {

double Material::cp() const { return std::sqrt(eta() / rho); }
double Material::cs() const { return std::sqrt(mu / rho); }

void Material::validate() const {
  if (!(rho > 0.0)) throw ConfigError("material: rho must be positive");
  if (!(mu > 0.0)) throw ConfigError("material: mu must be positive");
  if (!(lambda >= 0.0)) throw ConfigError("material: lambda must be non-negative");
}

PenaltyConfig PenaltyConfig::defaults(int p, const Material& m1, const Material* m2) {
  PenaltyConfig c;
  const double p2 = double(p) * p;
  c.gamma_D = 5.0 * p2;
  c.gamma_M[0] = m1.rho / 4.0;
  c.gamma_A[0] = m1.eta() / 2.0;
  if (m2) {
    const double e1 = m1.eta(), e2 = m2->eta();
    c.gamma_M[1] = m2->rho / 4.0;
    c.gamma_A[1] = e2 / 2.0;
    c.kappa = {e2 / (e1 + e2), e1 / (e1 + e2)};
    c.gamma_I = 20.0 * p2 * e1 * e2 / (e1 + e2);
  }
  return c;
}

PenaltyConfig PenaltyConfig::with_overrides(int p, const Material& m1, const Material* m2,
                                            const PenaltyOverrides& o) {
  PenaltyConfig c = defaults(p, m1, m2);
  if (o.gamma_D) c.gamma_D = *o.gamma_D;
  if (o.gamma_I) c.gamma_I = *o.gamma_I;
  for (int i = 0; i < 2; ++i) {
    if (o.gamma_M[i]) c.gamma_M[i] = *o.gamma_M[i];
    if (o.gamma_A[i]) c.gamma_A[i] = *o.gamma_A[i];
  }
  if (o.kappa1) {
    if (!(*o.kappa1 > 0.0 && *o.kappa1 < 1.0)) throw ConfigError("kappa1 must lie in (0, 1)");
    c.kappa = {*o.kappa1, 1.0 - *o.kappa1};
  }
  return c;
}

Mat2 strain(const Mat2& grad) { return 0.5 * (grad + grad.transpose()); }

Mat2 stress(const Mat2& grad, const Material& m) {
  return 2.0 * m.mu * strain(grad) + m.lambda * grad.trace() * Mat2::Identity();
}

}  // namespace cutfem
