#include <doctest.h>

#include "phaselab/sparse.hpp"
#include "support.hpp"

using namespace phaselab;

namespace {

SparseMatrix tridiag(int n, double diag) {
  std::vector<SparseMatrix::Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, diag});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return SparseMatrix::from_triplets(n, t);
}

// Random SPD: B^T B + n I with B sparse.
SparseMatrix random_spd(int n) {
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  std::vector<std::array<double, 3>> b;
  for (int e = 0; e < 3 * n; ++e)
    b.push_back({double(int(testing::uniform(0, n - 1e-9))), double(int(testing::uniform(0, n - 1e-9))),
                 testing::uniform(-1, 1)});
  for (const auto& u : b)
    for (const auto& v : b)
      if (u[0] == v[0]) dense[int(u[1])][int(v[1])] += u[2] * v[2];
  std::vector<SparseMatrix::Triplet> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = dense[i][j] + (i == j ? double(n) : 0.0);
      if (v != 0.0) t.push_back({i, j, v});
    }
  return SparseMatrix::from_triplets(n, t);
}

double residual_rel(const SparseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
  const auto ax = spmv(a, x);
  double r = 0, nb = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    r += (b[i] - ax[i]) * (b[i] - ax[i]);
    nb += b[i] * b[i];
  }
  return std::sqrt(r / nb);
}

}  // namespace

TEST_CASE("triplet assembly sums duplicates and sorts") {
  const SparseMatrix a = SparseMatrix::from_triplets(3, {{2, 0, 1.0}, {0, 1, 2.0}, {0, 1, 3.0}, {1, 1, 4.0}});
  CHECK(a.nnz() == 3);
  CHECK(a.coeff(0, 1) == 5.0);
  CHECK(a.coeff(2, 0) == 1.0);
  CHECK(a.coeff(2, 2) == 0.0);
  CHECK(a.diagonal() == std::vector<double>{0.0, 4.0, 0.0});
  const SparseMatrix t = a.transpose();
  CHECK(t.coeff(1, 0) == 5.0);
  CHECK(t.coeff(0, 2) == 1.0);
  CHECK(a.max_asymmetry() == 5.0);
  CHECK(tridiag(5, 2.0).max_asymmetry() == 0.0);
}

TEST_CASE("CSR validation") {
  CHECK_THROWS_AS(SparseMatrix(2, {0, 1}, {0}, {1.0}), Error);                 // short row_ptr
  CHECK_THROWS_AS(SparseMatrix(2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), Error);      // unsorted
  CHECK_THROWS_AS(SparseMatrix(2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), Error);      // column range
  CHECK_THROWS_AS(SparseMatrix(2, {0, 1, 2}, {0, 1}, {1.0, NAN}), Error);      // non-finite
  CHECK_NOTHROW(SparseMatrix(2, {0, 1, 2}, {0, 1}, {1.0, 1.0}));
}

TEST_CASE("spmv on a tridiagonal matrix") {
  const auto y = spmv(tridiag(4, 2.0), std::vector<double>{1, 1, 1, 1});
  CHECK(y == std::vector<double>{1, 0, 0, 1});
  std::vector<double> out(3);
  CHECK_THROWS_AS(spmv(tridiag(4, 2.0), std::vector<double>{1, 1, 1, 1}, out), Error);
  const auto id = spmv(SparseMatrix::identity(3), std::vector<double>{1, 2, 3});
  CHECK(id == std::vector<double>{1, 2, 3});
}

TEST_CASE("CG on a 2x2 system") {
  const SparseMatrix a = SparseMatrix::from_triplets(2, {{0, 0, 4}, {0, 1, 1}, {1, 0, 1}, {1, 1, 3}});
  const CgResult r = conjugate_gradient(a, std::vector<double>{1, 2});
  CHECK(r.report.converged);
  CHECK(r.report.iterations <= 2);
  CHECK(r.x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
  CHECK(r.x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("CG edge cases") {
  const SparseMatrix a = tridiag(50, 2.0);
  const CgResult zero = conjugate_gradient(a, std::vector<double>(50, 0.0));
  CHECK(zero.report.converged);
  CHECK(zero.report.iterations == 0);
  for (double v : zero.x) CHECK(v == 0.0);

  std::vector<double> b(50, 1.0);
  CgOptions opt;
  opt.max_iter = 2;
  const CgResult cut = conjugate_gradient(a, b, opt);
  CHECK_FALSE(cut.report.converged);
  CHECK(cut.report.final_residual_rel > opt.tol_rel);

  int calls = 0;
  CgOptions watch;
  watch.on_iterate = [&](int, std::span<const double>) { ++calls; };
  const CgResult full = conjugate_gradient(a, b, watch);
  CHECK(full.report.converged);
  CHECK(calls >= full.report.iterations);
  CHECK(residual_rel(a, full.x, b) <= 1e-10);

  // Starting from the solution converges immediately.
  CgOptions warm;
  warm.x0 = full.x;
  CHECK(conjugate_gradient(a, b, warm).report.iterations <= 1);

  CHECK_THROWS_AS(conjugate_gradient(a, std::vector<double>(49, 1.0)), Error);
}

TEST_CASE("Jacobi preconditioner") {
  const JacobiPreconditioner p(tridiag(3, 4.0));
  std::vector<double> z(3);
  p.apply(std::vector<double>{4, 8, 12}, z);
  CHECK(z == std::vector<double>{1, 2, 3});
  try {
    JacobiPreconditioner bad(SparseMatrix::from_triplets(2, {{0, 0, 1.0}, {1, 0, 1.0}}));
    FAIL("expected ZeroDiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDiagonal);
  }
}

TEST_CASE("CG property: true residual below tolerance on random SPD systems") {
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20 + 10 * trial;
    const SparseMatrix a = random_spd(n);
    CHECK(a.max_asymmetry() <= 1e-12);
    std::vector<double> b(n);
    for (double& v : b) v = testing::uniform(-1, 1);
    const JacobiPreconditioner p(a);
    for (const JacobiPreconditioner* pre : {static_cast<const JacobiPreconditioner*>(nullptr), &p}) {
      CgOptions opt;
      opt.tol_rel = 1e-11;
      opt.preconditioner = pre;
      const CgResult r = conjugate_gradient(a, b, opt);
      CHECK(r.report.converged);
      CHECK(residual_rel(a, r.x, b) <= 1e-11);
    }
  }
}
