#include "cutfem/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define CUTFEM_HAVE_AVX2 1
#else
#define CUTFEM_HAVE_AVX2 0
#endif

namespace cutfem::kernels::avx2 {

#if CUTFEM_HAVE_AVX2

bool available() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(const double* x, double a, const double* y, double* z, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(z + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) z[i] = x[i] + a * y[i];
}

void csr_matvec(const CsrView& a, const double* x, double* y) {
  for (int r = 0; r < a.rows; ++r) {
    int k = a.row_ptr[r];
    const int end = a.row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.col + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.val + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += a.val[k] * x[a.col[k]];
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
      const __m256d vg = _mm256_set1_pd(gi);
      int j = 0;
      for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(ki + j, _mm256_fmadd_pd(vg, _mm256_loadu_pd(gr + j), _mm256_loadu_pd(ki + j)));
      for (; j < n; ++j) ki[j] += gi * gr[j];
    }
  }
}

#else

bool available() { return false; }
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void add_scaled(const double* x, double a, const double* y, double* z, std::size_t n) {
  scalar::add_scaled(x, a, y, z, n);
}
void csr_matvec(const CsrView& a, const double* x, double* y) { scalar::csr_matvec(a, x, y); }
void gram_accumulate(double* k, int n, const double* g, int m, double alpha) {
  scalar::gram_accumulate(k, n, g, m, alpha);
}

#endif

}  // namespace cutfem::kernels::avx2
