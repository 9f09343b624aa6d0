#pragma once

#include <array>
#include <optional>

#include "cutfem/types.hpp"

namespace cutfem {

/// Isotropic linear elastic material.
struct Material {
  double rho = 1.0;
  double lambda = 1.0;
  double mu = 1.0;

  double eta() const { return 2.0 * mu + lambda; }
  double cp() const;
  double cs() const;
  /// Throws ConfigError unless rho > 0, mu > 0, lambda >= 0.
  void validate() const;
};

/// Sandstone and granite values used throughout the experiments.
inline constexpr Material kSandstone{1.0, 1.1429, 1.0};
inline constexpr Material kGranite{1.1154, 2.6182, 1.8};

/// Optional user overrides of the penalty and stabilization parameters.
struct PenaltyOverrides {
  std::optional<double> gamma_D;
  std::optional<double> gamma_I;
  std::array<std::optional<double>, 2> gamma_M;
  std::array<std::optional<double>, 2> gamma_A;
  std::optional<double> kappa1;
};

/// Nitsche and ghost-penalty parameters. Index 0 refers to domain 1 and
/// index 1 to domain 2; single-domain problems use index 0.
struct PenaltyConfig {
  double gamma_D = 0.0;
  double gamma_I = 0.0;
  std::array<double, 2> gamma_M{0.0, 0.0};
  std::array<double, 2> gamma_A{0.0, 0.0};
  std::array<double, 2> kappa{1.0, 0.0};

  /// gamma_D = 5 p^2, gamma_M = rho / 4, gamma_A = eta / 2 and, for two
  /// materials, kappa_1 = eta_2 / (eta_1 + eta_2), gamma_I = 20 p^2 eta_1 eta_2 / (eta_1 + eta_2).
  static PenaltyConfig defaults(int p, const Material& m1, const Material* m2 = nullptr);
  static PenaltyConfig with_overrides(int p, const Material& m1, const Material* m2,
                                      const PenaltyOverrides& o);
};

/// eps_ij = (d u_i / d x_j + d u_j / d x_i) / 2, with grad(i, j) = d u_i / d x_j.
Mat2 strain(const Mat2& grad);
/// sigma = 2 mu eps + lambda tr(eps) I
Mat2 stress(const Mat2& grad, const Material& m);

}  // namespace cutfem
