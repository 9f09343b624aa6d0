#pragma once

#include <functional>

#include <Eigen/Dense>

#include "cutfem/basis.hpp"
#include "cutfem/material.hpp"
#include "cutfem/mesh.hpp"
#include "cutfem/quadrature.hpp"

namespace cutfem {

using LocalMatrix = Eigen::MatrixXd;
using LocalVector = Eigen::VectorXd;
using PointField = std::function<Vec2(const Point&)>;

/// Element-local forms. Local DoF order is 2 * j + component for the
/// scalar node j of the cell (see ElementBasis).
namespace forms {

/// 2 x ndof operator mapping local coefficients to the displacement value.
Eigen::MatrixXd value_operator(const ShapeValues& sv);
/// 2 x ndof operator mapping local coefficients to sigma(u) n.
Eigen::MatrixXd traction_operator(const ShapeValues& sv, const Material& m, const Vec2& n);

/// 2 mu (eps(u), eps(v)) + lambda (div u, div v) over the rule.
LocalMatrix bulk(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                 const QuadratureRule& rule, const Material& m);

/// (rho u, v) over the rule.
LocalMatrix mass(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                 const QuadratureRule& rule, double rho);

/// Weight h^(2k+1) / ((2k+1) (k!)^2) of the k-th derivative jump.
double ghost_penalty_weight(double h, int k);

/// sum_{k=1..p} w_k <[d_n^k u], [d_n^k v]>_F over the whole face. Rows and
/// columns are ordered [minus cell | plus cell]; the jump is plus - minus.
LocalMatrix ghost_penalty(const ElementBasis& basis, const BackgroundMesh& mesh,
                          const InteriorFace& face);

/// j(v, v) on one face evaluated from the pointwise jumps of the local
/// coefficient vectors of the two cells, without forming the matrix. The
/// jumps are computed before squaring, so fields without jumps give values
/// at the square of roundoff rather than roundoff times the matrix norm.
double ghost_penalty_energy(const ElementBasis& basis, const BackgroundMesh& mesh,
                            const InteriorFace& face, const LocalVector& minus,
                            const LocalVector& plus);

/// -<sigma(u) n, v> - <u, sigma(v) n> + gamma/h (2 mu <u, v> + lambda <u.n, v.n>)
LocalMatrix nitsche_dirichlet(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                              const SurfaceQuadratureRule& rule, const Material& m,
                              double gamma_D);

/// -<g, sigma(v) n> + gamma/h (2 mu <g, v> + lambda <g.n, v.n>)
LocalVector dirichlet_load(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                           const SurfaceQuadratureRule& rule, const Material& m, double gamma_D,
                           const PointField& g);

/// Interface coupling on a cut cell. Rows and columns are ordered
/// [domain 1 | domain 2]; jump = u2 - u1, average = kappa1 s1 + kappa2 s2,
/// normals point from domain 2 into domain 1.
LocalMatrix interface(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                      const SurfaceQuadratureRule& rule, const Material& m1, const Material& m2,
                      double kappa1, double kappa2, double gamma_I);

/// (f, v) over the volume rule plus <g, v> over the surface rule. Empty
/// functions contribute nothing.
LocalVector body_neumann_load(const ElementBasis& basis, const BackgroundMesh& mesh, int cell,
                              const QuadratureRule& volume, const SurfaceQuadratureRule& surface,
                              const PointField& f, const PointField& g);

}  // namespace forms
}  // namespace cutfem
