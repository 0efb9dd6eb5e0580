#include "phaselab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "phaselab/kernels.hpp"

namespace phaselab {

SparseMatrix SparseMatrix::from_triplets(std::int32_t n, std::vector<Triplet> entries) {
  require(n >= 1, ErrorCode::DimensionMismatch, "matrix dimension must be >= 1");
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int32_t> col;
  std::vector<double> val;
  col.reserve(entries.size());
  val.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Triplet& t = entries[k];
    require(t.row >= 0 && t.row < n && t.col >= 0 && t.col < n, ErrorCode::DimensionMismatch,
            "triplet index out of range");
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      val.back() += t.value;
      continue;
    }
    col.push_back(t.col);
    val.push_back(t.value);
    ++row_ptr[static_cast<std::size_t>(t.row) + 1];
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) row_ptr[r + 1] += row_ptr[r];
  return SparseMatrix(n, std::move(row_ptr), std::move(col), std::move(val));
}

SparseMatrix::SparseMatrix(std::int32_t n, std::vector<std::int64_t> row_ptr,
                           std::vector<std::int32_t> col, std::vector<double> values)
    : n_(n), row_ptr_(std::move(row_ptr)), col_(std::move(col)), values_(std::move(values)) {
  require(n_ >= 1, ErrorCode::DimensionMismatch, "matrix dimension must be >= 1");
  require(row_ptr_.size() == static_cast<std::size_t>(n_) + 1 && row_ptr_.front() == 0 &&
              row_ptr_.back() == static_cast<std::int64_t>(col_.size()) &&
              col_.size() == values_.size(),
          ErrorCode::DimensionMismatch, "inconsistent CSR arrays");
  for (std::int32_t r = 0; r < n_; ++r) {
    require(row_ptr_[r] <= row_ptr_[r + 1], ErrorCode::DimensionMismatch,
            "CSR offsets must be monotone");
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      require(col_[k] >= 0 && col_[k] < n_, ErrorCode::DimensionMismatch, "column out of range");
      require(k == row_ptr_[r] || col_[k - 1] < col_[k], ErrorCode::DimensionMismatch,
              "columns must be sorted and unique within a row");
      require(std::isfinite(values_[k]), ErrorCode::InvalidConfig, "matrix values must be finite");
    }
  }
}

SparseMatrix SparseMatrix::identity(std::int32_t n) {
  std::vector<std::int64_t> rp(static_cast<std::size_t>(n) + 1);
  std::vector<std::int32_t> col(static_cast<std::size_t>(n));
  for (std::int32_t i = 0; i <= n; ++i) rp[i] = i;
  for (std::int32_t i = 0; i < n; ++i) col[i] = i;
  return SparseMatrix(n, std::move(rp), std::move(col), std::vector<double>(n, 1.0));
}

double SparseMatrix::coeff(std::int32_t row, std::int32_t col) const {
  const auto first = col_.begin() + row_ptr_[row];
  const auto last = col_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  return (it != last && *it == col) ? values_[it - col_.begin()] : 0.0;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(n_));
  for (std::int32_t r = 0; r < n_; ++r) d[r] = coeff(r, r);
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::int32_t r = 0; r < n_; ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({col_[k], r, values_[k]});
  return from_triplets(n_, std::move(t));
}

double SparseMatrix::max_asymmetry() const {
  double m = 0.0;
  for (std::int32_t r = 0; r < n_; ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      m = std::max(m, std::abs(values_[k] - coeff(col_[k], r)));
  return m;
}

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  require(x.size() == static_cast<std::size_t>(a.n()) && y.size() == x.size(),
          ErrorCode::DimensionMismatch,
          "spmv: vector length " + std::to_string(x.size()) + " vs n=" + std::to_string(a.n()));
  kernels::active().spmv_csr(a.row_ptr(), a.col_index(), a.values(), x, y);
}

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x) {
  std::vector<double> y(x.size());
  spmv(a, x, y);
  return y;
}

JacobiPreconditioner::JacobiPreconditioner(const SparseMatrix& a) : inv_diag_(a.diagonal()) {
  for (std::size_t i = 0; i < inv_diag_.size(); ++i) {
    require(inv_diag_[i] > 0.0, ErrorCode::ZeroDiagonal,
            "diagonal entry " + std::to_string(i) + " is not positive");
    inv_diag_[i] = 1.0 / inv_diag_[i];
  }
}

void JacobiPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
}

namespace {

#ifndef NDEBUG
// x.Ax > 0 on a few random vectors.
void debug_check_positive(const SparseMatrix& a) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  std::vector<double> x(static_cast<std::size_t>(a.n())), ax(x.size());
  for (int trial = 0; trial < 3; ++trial) {
    for (double& v : x) v = nd(rng);
    spmv(a, x, ax);
    require(kernels::active().dot(x, ax) > 0.0, ErrorCode::InvalidConfig,
            "CG matrix is not positive definite");
  }
}
#endif

}  // namespace

CgResult conjugate_gradient(const SparseMatrix& a, std::span<const double> b,
                            const CgOptions& options) {
  const std::size_t n = static_cast<std::size_t>(a.n());
  require(b.size() == n, ErrorCode::DimensionMismatch, "CG right-hand side has wrong length");
  require(options.x0.empty() || options.x0.size() == n, ErrorCode::DimensionMismatch,
          "CG initial guess has wrong length");
#ifndef NDEBUG
  debug_check_positive(a);
#endif
  const auto& k = kernels::active();
  const int max_iter = options.max_iter > 0 ? options.max_iter : static_cast<int>(10 * n);

  CgResult out;
  out.x.assign(n, 0.0);
  const double b_norm = std::sqrt(k.dot(b, b));
  if (b_norm == 0.0) {
    out.report = {0, 0.0, true};
    return out;
  }
  if (!options.x0.empty()) std::copy(options.x0.begin(), options.x0.end(), out.x.begin());

  std::vector<double> r(n), z(n), p(n), ap(n);
  const auto true_residual = [&] {
    spmv(a, out.x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    return std::sqrt(k.dot(r, r)) / b_norm;
  };
  const auto precondition = [&] {
    if (options.preconditioner)
      options.preconditioner->apply(r, z);
    else
      std::copy(r.begin(), r.end(), z.begin());
  };

  double rel = true_residual();
  int it = 0;
  bool breakdown = false;
  while (it < max_iter && rel > options.tol_rel && !breakdown) {
    // (Re)start from the true residual; a restart happens only when the
    // recursive residual reached tolerance while the true one did not.
    precondition();
    std::copy(z.begin(), z.end(), p.begin());
    double rz = k.dot(r, z);
    while (it < max_iter) {
      spmv(a, p, ap);
      const double pap = k.dot(p, ap);
      if (!std::isfinite(pap) || !std::isfinite(rz))
        throw NotConvergedError("CG produced a non-finite value", {it, rel, false});
      if (pap <= 0.0) {
        breakdown = true;
        break;
      }
      const double alpha = rz / pap;
      k.axpy(alpha, p, out.x);
      k.axpy(-alpha, ap, r);
      ++it;
      if (options.on_iterate) options.on_iterate(it, out.x);
      rel = std::sqrt(k.dot(r, r)) / b_norm;
      if (rel <= options.tol_rel) break;
      precondition();
      const double rz_new = k.dot(r, z);
      k.xpay(z, rz_new / rz, p);
      rz = rz_new;
    }
    rel = true_residual();
    if (!std::isfinite(rel))
      throw NotConvergedError("CG produced a non-finite value", {it, rel, false});
  }
  out.report = {it, rel, rel <= options.tol_rel};
  return out;
}

}  // namespace phaselab
