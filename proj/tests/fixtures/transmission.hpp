#pragma once

// Reflection/transmission of a normally incident P wave between sandstone
// (rho 1, lambda 1.1429, mu 1) and granite (rho 1.1154, lambda 2.6182, mu 1.8),
// frozen from an independent dense solve of the two continuity equations
//   1 + R = T,   Z1 (1 - R) = Z2 T,   Z_i = rho_i c_p,i.
namespace fixtures {
inline constexpr double kReflection = -0.195343700842047;
inline constexpr double kTransmission = 0.8046562991579531;
}  // namespace fixtures
