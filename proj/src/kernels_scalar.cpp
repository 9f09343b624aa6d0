#include "cutfem/kernels.hpp"

namespace cutfem::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(const double* x, double a, const double* y, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + a * y[i];
}

void csr_matvec(const CsrView& a, const double* x, double* y) {
  for (int r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) s += a.val[k] * x[a.col[k]];
    y[r] = s;
  }
}

void gram_accumulate(double* k, int n, const double* g, int m, double alpha) {
  for (int r = 0; r < m; ++r) {
    const double* gr = g + static_cast<std::size_t>(r) * n;
    for (int i = 0; i < n; ++i) {
      const double gi = alpha * gr[i];
      if (gi == 0.0) continue;
      double* ki = k + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) ki[j] += gi * gr[j];
    }
  }
}

}  // namespace cutfem::kernels::scalar
