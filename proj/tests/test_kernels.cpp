#include <doctest.h>

#include <cstring>
#include <vector>

#include "phaselab/kernels.hpp"
#include "phaselab/sparse.hpp"
#include "support.hpp"

using namespace phaselab;
namespace k = phaselab::kernels;

namespace {

std::vector<double> random_vec(std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = testing::uniform(-1.0, 1.0);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar table is always available and selectable") {
  CHECK(k::scalar_table().isa == k::Isa::Scalar);
  const k::Isa before = k::active().isa;
  CHECK(k::set_active_isa(k::Isa::Scalar));
  CHECK(k::active().isa == k::Isa::Scalar);
  if (k::avx2_table() == nullptr) CHECK_FALSE(k::set_active_isa(k::Isa::Avx2));
  k::set_active_isa(before);
}

TEST_CASE("scalar kernels on small hand-checked inputs") {
  const auto& t = k::scalar_table();
  std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(t.dot(a, b) == 32.0);
  t.axpy(2.0, a, b);
  CHECK(b == std::vector<double>{6, 9, 12});
  t.xpay(a, 0.5, b);
  CHECK(b == std::vector<double>{4, 6.5, 9});

  // 3x3 grid of f = x^2 with h = 1: interior Laplacian is 2.
  std::vector<double> f{0, 1, 4, 0, 1, 4, 0, 1, 4}, out(9, 0.0);
  t.laplacian_row({4, 1, 3, 1.0, 1.0}, f.data(), out.data());
  CHECK(out[4] == 2.0);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const k::KernelTable* v = k::avx2_table();
  if (v == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  const auto& s = k::scalar_table();
  for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 13u, 64u, 1001u}) {
    CAPTURE(n);
    const auto x = random_vec(n), y0 = random_vec(n);
    const double ds = s.dot(x, y0), dv = v->dot(x, y0);
    CHECK(std::abs(ds - dv) <= 1e-14 * (1.0 + std::abs(ds)) * std::sqrt(double(n)));

    auto ys = y0, yv = y0;
    s.axpy(0.37, x, ys);
    v->axpy(0.37, x, yv);
    CHECK(bit_equal(ys, yv));

    ys = y0;
    yv = y0;
    s.xpay(x, -1.3, ys);
    v->xpay(x, -1.3, yv);
    CHECK(bit_equal(ys, yv));
  }

  // Stencils over every interior row of an odd-sized grid (exercises tails).
  for (int nx : {5, 9, 12, 37}) {
    CAPTURE(nx);
    const int ny = 7;
    const auto f = random_vec(std::size_t(nx) * ny);
    auto c = random_vec(f.size());
    for (double& e : c) e = 1.5 + e;
    std::vector<double> ls(f.size(), 0.0), lv = ls, fs = ls, fv = ls;
    for (int j = 1; j < ny - 1; ++j) {
      const k::StencilRow row{std::size_t(j) * nx + 1, std::size_t(nx - 2), std::size_t(nx), 3.1,
                              2.7};
      s.laplacian_row(row, f.data(), ls.data());
      v->laplacian_row(row, f.data(), lv.data());
      s.flux_divergence_row(row, c.data(), f.data(), fs.data());
      v->flux_divergence_row(row, c.data(), f.data(), fv.data());
    }
    CHECK(bit_equal(ls, lv));
    CHECK(bit_equal(fs, fv));
  }

  // Random sparse matrix products.
  std::vector<SparseMatrix::Triplet> trip;
  const int n = 257;
  for (int r = 0; r < n; ++r)
    for (int e = 0; e < 9; ++e)
      trip.push_back({r, int(testing::uniform(0, n - 1e-9)), testing::uniform(-1, 1)});
  const SparseMatrix a = SparseMatrix::from_triplets(n, trip);
  const auto x = random_vec(n);
  std::vector<double> ys(n), yv(n);
  s.spmv_csr(a.row_ptr(), a.col_index(), a.values(), x, ys);
  v->spmv_csr(a.row_ptr(), a.col_index(), a.values(), x, yv);
  for (int r = 0; r < n; ++r) CHECK(std::abs(ys[r] - yv[r]) <= 1e-14 * 10.0);
}

TEST_CASE("solver results agree across kernel variants") {
  if (k::avx2_table() == nullptr) return;
  const k::Isa before = k::active().isa;
  // 1D Laplacian plus shift, SPD.
  std::vector<SparseMatrix::Triplet> t;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.5});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  const SparseMatrix a = SparseMatrix::from_triplets(n, t);
  const auto b = random_vec(n);
  k::set_active_isa(k::Isa::Scalar);
  const auto xs = conjugate_gradient(a, b).x;
  k::set_active_isa(k::Isa::Avx2);
  const auto xv = conjugate_gradient(a, b).x;
  k::set_active_isa(before);
  for (int i = 0; i < n; ++i) CHECK(xs[i] == doctest::Approx(xv[i]).epsilon(1e-9));
}
