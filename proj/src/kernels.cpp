#include "cutfem/kernels.hpp"

#include <atomic>
#include <cassert>

namespace cutfem::kernels {

namespace {

Isa detect() { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa detected_isa() { return detect(); }
Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2::available()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  if (active_isa() == Isa::Avx2) return avx2::dot(x.data(), y.data(), x.size());
  return scalar::dot(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  if (active_isa() == Isa::Avx2) return avx2::axpy(a, x.data(), y.data(), x.size());
  scalar::axpy(a, x.data(), y.data(), x.size());
}

void add_scaled(std::span<const double> x, double a, std::span<const double> y, std::span<double> z) {
  assert(x.size() == y.size() && x.size() == z.size());
  if (active_isa() == Isa::Avx2) return avx2::add_scaled(x.data(), a, y.data(), z.data(), x.size());
  scalar::add_scaled(x.data(), a, y.data(), z.data(), x.size());
}

void csr_matvec(const CsrView& a, std::span<const double> x, std::span<double> y) {
  assert(static_cast<int>(y.size()) == a.rows);
  if (active_isa() == Isa::Avx2) return avx2::csr_matvec(a, x.data(), y.data());
  scalar::csr_matvec(a, x.data(), y.data());
}

void gram_accumulate(std::span<double> k, int n, std::span<const double> g, int m, double alpha) {
  assert(k.size() >= static_cast<std::size_t>(n) * n && g.size() >= static_cast<std::size_t>(m) * n);
  if (active_isa() == Isa::Avx2) return avx2::gram_accumulate(k.data(), n, g.data(), m, alpha);
  scalar::gram_accumulate(k.data(), n, g.data(), m, alpha);
}

}  // namespace cutfem::kernels
