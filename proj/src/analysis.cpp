#include "cutfem/analysis.hpp"

#include <cmath>
#include <limits>

#include <lapacke.h>

namespace cutfem {

ErrorNorms error_norms(const Discretization& disc, std::span<const double> coeffs,
                       const ReferenceField& exact) {
  double l2 = 0.0, h1 = 0.0;
  for (int d = 0; d < disc.num_domains(); ++d) {
    const DofMap& dm = disc.dofmap(d);
    for (const CellVolumeRule& r : disc.volume_rules(d)) {
      for (std::size_t q = 0; q < r.rule.size(); ++q) {
        const Point& x = r.rule.points[q];
        const FieldSample s = evaluate_in_cell(coeffs, dm, disc.basis(), r.cell, x);
        l2 += r.rule.weights[q] * (s.value - exact.value(x, d)).squaredNorm();
        if (exact.gradient) h1 += r.rule.weights[q] * (s.grad - exact.gradient(x, d)).squaredNorm();
      }
    }
  }
  return {std::sqrt(l2), exact.gradient ? std::sqrt(h1) : std::numeric_limits<double>::quiet_NaN()};
}

ErrorNorms error_norms(const Discretization& disc, std::span<const double> coeffs,
                       const ExactSolution& exact, double t) {
  ReferenceField f{[&](const Point& x, int d) { return exact.displacement(x, t, d); },
                   [&](const Point& x, int d) { return exact.gradient(x, t, d); }};
  return error_norms(disc, coeffs, f);
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw Error("symmetric_eigenvalues: matrix is not square");
  if (n == 0) return {};
  Eigen::MatrixXd work = a;
  std::vector<double> w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
  if (info != 0) throw Error("symmetric_eigenvalues: LAPACK dsyevd failed");
  return w;
}

std::vector<double> symmetric_eigenvalues(const SparseMatrix& a) {
  return symmetric_eigenvalues(Eigen::MatrixXd(a));
}

double condition_number_from_spectrum(std::span<const double> w) {
  if (w.empty()) throw Error("condition_number: empty matrix");
  const double lo = w.front(), hi = w.back();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double condition_number(const Eigen::MatrixXd& a) {
  const auto w = symmetric_eigenvalues(a);
  return condition_number_from_spectrum(w);
}

double condition_number(const SparseMatrix& a) {
  const auto w = symmetric_eigenvalues(a);
  return condition_number_from_spectrum(w);
}

namespace {

double dense_max_generalized(const SparseMatrix& mass, const SparseMatrix& stiffness) {
  const int n = static_cast<int>(mass.rows());
  Eigen::MatrixXd a(stiffness), m(mass);
  std::vector<double> w(n);
  const lapack_int info =
      LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'N', 'L', n, a.data(), n, m.data(), n, w.data());
  if (info > n) throw SingularSystemError("cfl_number: mass matrix is not positive definite");
  if (info != 0) throw Error("cfl_number: LAPACK dsygvd failed");
  return w.back();
}

double power_max_generalized(const SparseMatrix& mass, const SparseMatrix& stiffness) {
  const SparseCholesky chol(mass, "mass matrix");
  Vector x = Vector::Ones(mass.rows()) + Vector::LinSpaced(mass.rows(), 0.0, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Vector y = chol.solve(stiffness * x);
    const double mx = x.dot(mass * x);
    const double next = x.dot(stiffness * x) / mx;
    x = y / std::sqrt(y.dot(mass * y));
    if (it > 0 && std::abs(next - lambda) <= 1e-7 * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

double max_generalized_eigenvalue(const SparseMatrix& mass, const SparseMatrix& stiffness) {
  if (mass.rows() != stiffness.rows() || mass.rows() != mass.cols())
    throw Error("max_generalized_eigenvalue: size mismatch");
  if (mass.rows() <= 5000) return dense_max_generalized(mass, stiffness);
  return power_max_generalized(mass, stiffness);
}

double cfl_number(const SparseMatrix& mass, const SparseMatrix& stiffness, double h) {
  const double lambda = max_generalized_eigenvalue(mass, stiffness);
  if (!(lambda > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (h * std::sqrt(lambda));
}

double asymmetry(const SparseMatrix& a) {
  const SparseMatrix d = a - SparseMatrix(a.transpose());
  double num = 0.0, den = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) num = std::max(num, std::abs(it.value()));
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) den = std::max(den, std::abs(it.value()));
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace cutfem
