#pragma once

// Data-parallel inner loops with a portable scalar reference implementation
// and an AVX2/FMA variant chosen at runtime from the host CPU.

#include <cstddef>
#include <span>

namespace cutfem::kernels {

enum class Isa { Scalar, Avx2 };

/// Compressed sparse row view; values and column indices of row r live in
/// [row_ptr[r], row_ptr[r + 1]).
struct CsrView {
  int rows = 0;
  const int* row_ptr = nullptr;
  const int* col = nullptr;
  const double* val = nullptr;
};

double dot(std::span<const double> x, std::span<const double> y);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// z = x + a * y
void add_scaled(std::span<const double> x, double a, std::span<const double> y, std::span<double> z);
/// y = A x
void csr_matvec(const CsrView& a, std::span<const double> x, std::span<double> y);
/// K += alpha * G^T G, with G an m x n row-major block and K n x n row-major.
void gram_accumulate(std::span<double> k, int n, std::span<const double> g, int m, double alpha);

Isa detected_isa();
Isa active_isa();
/// Overrides the dispatch (tests and benchmarking). Requesting Avx2 on a CPU
/// without it falls back to Scalar. Returns the ISA now in use.
Isa set_isa(Isa isa);
const char* isa_name(Isa isa);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void add_scaled(const double* x, double a, const double* y, double* z, std::size_t n);
void csr_matvec(const CsrView& a, const double* x, double* y);
void gram_accumulate(double* k, int n, const double* g, int m, double alpha);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void add_scaled(const double* x, double a, const double* y, double* z, std::size_t n);
void csr_matvec(const CsrView& a, const double* x, double* y);
void gram_accumulate(double* k, int n, const double* g, int m, double alpha);
}  // namespace avx2

}  // namespace cutfem::kernels
