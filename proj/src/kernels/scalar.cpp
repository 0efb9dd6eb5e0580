#include "kernels_impl.hpp"

namespace phaselab::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = y[i] + alpha * x[i];
}

void xpay(std::span<const double> r, double beta, std::span<double> p) {
  for (std::size_t i = 0; i < r.size(); ++i) p[i] = r[i] + beta * p[i];
}

void spmv_csr(std::span<const std::int64_t> row_ptr, std::span<const std::int32_t> col,
              std::span<const double> val, std::span<const double> x, std::span<double> y) {
  const std::size_t n = row_ptr.size() - 1;
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col[k]];
    y[r] = s;
  }
}

void laplacian_row(const StencilRow& row, const double* f, double* out) {
  const std::size_t s = row.stride;
  for (std::size_t n = row.begin; n < row.begin + row.count; ++n) {
    const double c2 = f[n] + f[n];
    const double dxx = (f[n - 1] - c2) + f[n + 1];
    const double dyy = (f[n - s] - c2) + f[n + s];
    out[n] = dxx * row.inv_hx2 + dyy * row.inv_hy2;
  }
}

void flux_divergence_row(const StencilRow& row, const double* c, const double* f, double* out) {
  const std::size_t s = row.stride;
  for (std::size_t n = row.begin; n < row.begin + row.count; ++n) {
    const double ce = 0.5 * (c[n] + c[n + 1]);
    const double cw = 0.5 * (c[n - 1] + c[n]);
    const double cn = 0.5 * (c[n] + c[n + s]);
    const double cs = 0.5 * (c[n - s] + c[n]);
    const double fx = ce * (f[n + 1] - f[n]) - cw * (f[n] - f[n - 1]);
    const double fy = cn * (f[n + s] - f[n]) - cs * (f[n] - f[n - s]);
    out[n] = fx * row.inv_hx2 + fy * row.inv_hy2;
  }
}

}  // namespace phaselab::kernels::scalar
