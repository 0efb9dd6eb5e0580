#pragma once

#include "phaselab/kernels.hpp"

namespace phaselab::kernels {

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> r, double beta, std::span<double> p);
void spmv_csr(std::span<const std::int64_t> row_ptr, std::span<const std::int32_t> col,
              std::span<const double> val, std::span<const double> x, std::span<double> y);
void laplacian_row(const StencilRow& row, const double* f, double* out);
void flux_divergence_row(const StencilRow& row, const double* c, const double* f, double* out);
}  // namespace scalar

#if defined(PHASELAB_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> r, double beta, std::span<double> p);
void spmv_csr(std::span<const std::int64_t> row_ptr, std::span<const std::int32_t> col,
              std::span<const double> val, std::span<const double> x, std::span<double> y);
void laplacian_row(const StencilRow& row, const double* f, double* out);
void flux_divergence_row(const StencilRow& row, const double* c, const double* f, double* out);
}  // namespace avx2
#endif

}  // namespace phaselab::kernels
