#pragma once

// Data-parallel inner loops used by the field operators and the CG solver.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2 variant. The active table is chosen once at startup from CPUID and
// can be pinned with PHASELAB_SIMD=scalar|avx2 (or set_active_isa in tests).
//
// Elementwise kernels (axpy, xpay, stencils) are bit-identical across
// variants: no FMA contraction, identical operation order per element.
// Reductions (dot, spmv rows) reassociate and agree to rounding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace phaselab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Geometry of one grid row segment for the stencil kernels. Node n's
/// neighbours are n-1, n+1 (x) and n-stride, n+stride (y).
struct StencilRow {
  std::size_t begin = 0;  // first node index (flat)
  std::size_t count = 0;  // number of consecutive nodes
  std::size_t stride = 0; // nx
  double inv_hx2 = 0.0;
  double inv_hy2 = 0.0;
};

struct KernelTable {
  Isa isa;
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // y += alpha * x
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  // p = r + beta * p
  void (*xpay)(std::span<const double> r, double beta, std::span<double> p);
  // y = A x for CSR storage
  void (*spmv_csr)(std::span<const std::int64_t> row_ptr, std::span<const std::int32_t> col,
                   std::span<const double> val, std::span<const double> x, std::span<double> y);
  // out[n] = (f[n-1] - 2f[n] + f[n+1]) / hx^2 + (f[n-s] - 2f[n] + f[n+s]) / hy^2
  void (*laplacian_row)(const StencilRow& row, const double* f, double* out);
  // out[n] = div(c grad f) in flux form with arithmetic-mean face coefficients
  void (*flux_divergence_row)(const StencilRow& row, const double* c, const double* f,
                              double* out);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table() noexcept;

const KernelTable& active() noexcept;

/// Returns false (and leaves the selection unchanged) if isa is unavailable.
bool set_active_isa(Isa isa) noexcept;

}  // namespace phaselab::kernels
