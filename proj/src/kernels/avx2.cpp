// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace phaselab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += pa[i] * pb[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(px + i));
    _mm256_storeu_pd(py + i, _mm256_add_pd(_mm256_loadu_pd(py + i), prod));
  }
  for (; i < n; ++i) py[i] = py[i] + alpha * px[i];
}

void xpay(std::span<const double> r, double beta, std::span<double> p) {
  const std::size_t n = r.size();
  const double* pr = r.data();
  double* pp = p.data();
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(vb, _mm256_loadu_pd(pp + i));
    _mm256_storeu_pd(pp + i, _mm256_add_pd(_mm256_loadu_pd(pr + i), prod));
  }
  for (; i < n; ++i) pp[i] = pr[i] + beta * pp[i];
}

void spmv_csr(std::span<const std::int64_t> row_ptr, std::span<const std::int32_t> col,
              std::span<const double> val, std::span<const double> x, std::span<double> y) {
  const std::size_t n = row_ptr.size() - 1;
  const double* px = x.data();
  for (std::size_t r = 0; r < n; ++r) {
    auto k = row_ptr[r];
    const auto end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col.data() + k));
      const __m256d xv = _mm256_i32gather_pd(px, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(val.data() + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += val[k] * px[col[k]];
    y[r] = s;
  }
}

void laplacian_row(const StencilRow& row, const double* f, double* out) {
  const std::size_t s = row.stride;
  const __m256d ihx = _mm256_set1_pd(row.inv_hx2);
  const __m256d ihy = _mm256_set1_pd(row.inv_hy2);
  std::size_t n = row.begin;
  const std::size_t end = row.begin + row.count;
  for (; n + 4 <= end; n += 4) {
    const __m256d c = _mm256_loadu_pd(f + n);
    const __m256d c2 = _mm256_add_pd(c, c);
    const __m256d dxx =
        _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(f + n - 1), c2), _mm256_loadu_pd(f + n + 1));
    const __m256d dyy =
        _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(f + n - s), c2), _mm256_loadu_pd(f + n + s));
    _mm256_storeu_pd(out + n, _mm256_add_pd(_mm256_mul_pd(dxx, ihx), _mm256_mul_pd(dyy, ihy)));
  }
  if (n < end) scalar::laplacian_row({n, end - n, s, row.inv_hx2, row.inv_hy2}, f, out);
}

void flux_divergence_row(const StencilRow& row, const double* c, const double* f, double* out) {
  const std::size_t s = row.stride;
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d ihx = _mm256_set1_pd(row.inv_hx2);
  const __m256d ihy = _mm256_set1_pd(row.inv_hy2);
  std::size_t n = row.begin;
  const std::size_t end = row.begin + row.count;
  for (; n + 4 <= end; n += 4) {
    const __m256d c0 = _mm256_loadu_pd(c + n);
    const __m256d ce = _mm256_mul_pd(half, _mm256_add_pd(c0, _mm256_loadu_pd(c + n + 1)));
    const __m256d cw = _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(c + n - 1), c0));
    const __m256d cn = _mm256_mul_pd(half, _mm256_add_pd(c0, _mm256_loadu_pd(c + n + s)));
    const __m256d cs = _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(c + n - s), c0));
    const __m256d f0 = _mm256_loadu_pd(f + n);
    const __m256d fx = _mm256_sub_pd(
        _mm256_mul_pd(ce, _mm256_sub_pd(_mm256_loadu_pd(f + n + 1), f0)),
        _mm256_mul_pd(cw, _mm256_sub_pd(f0, _mm256_loadu_pd(f + n - 1))));
    const __m256d fy = _mm256_sub_pd(
        _mm256_mul_pd(cn, _mm256_sub_pd(_mm256_loadu_pd(f + n + s), f0)),
        _mm256_mul_pd(cs, _mm256_sub_pd(f0, _mm256_loadu_pd(f + n - s))));
    _mm256_storeu_pd(out + n, _mm256_add_pd(_mm256_mul_pd(fx, ihx), _mm256_mul_pd(fy, ihy)));
  }
  if (n < end) scalar::flux_divergence_row({n, end - n, s, row.inv_hx2, row.inv_hy2}, c, f, out);
}

}  // namespace phaselab::kernels::avx2
