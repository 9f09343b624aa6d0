#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cutfem/discretization.hpp"
#include "cutfem/exact.hpp"
#include "cutfem/system.hpp"

namespace cutfem {

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

/// Reference field evaluated per domain.
struct ReferenceField {
  std::function<Vec2(const Point&, int)> value;
  std::function<Mat2(const Point&, int)> gradient;
};

/// L2 and H1-semi errors of the global coefficient vector against a
/// reference, integrated with the physical (cut) volume rules only.
ErrorNorms error_norms(const Discretization& disc, std::span<const double> coeffs,
                       const ReferenceField& exact);
ErrorNorms error_norms(const Discretization& disc, std::span<const double> coeffs,
                       const ExactSolution& exact, double t);

/// Ascending eigenvalues of a symmetric matrix (dense LAPACK solve).
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);
std::vector<double> symmetric_eigenvalues(const SparseMatrix& a);

/// lambda_max / lambda_min. Returns +inf when lambda_min <= 0, i.e. when
/// a matrix expected to be positive definite has lost definiteness.
double condition_number(const SparseMatrix& a);
double condition_number(const Eigen::MatrixXd& a);
double condition_number_from_spectrum(std::span<const double> ascending);

/// Largest lambda with A x = lambda M x. Dense for n <= 5000, otherwise
/// power iteration on M^-1 A to 1e-6 relative. Throws SingularSystemError
/// when M is not positive definite.
double max_generalized_eigenvalue(const SparseMatrix& mass, const SparseMatrix& stiffness);

/// 1 / (h sqrt(lambda_max))
double cfl_number(const SparseMatrix& mass, const SparseMatrix& stiffness, double h);

/// Relative asymmetry max|A - A^T| / max|A|.
double asymmetry(const SparseMatrix& a);

}  // namespace cutfem
