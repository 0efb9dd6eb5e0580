#pragma once

// Compressed-sparse-row matrices and a (Jacobi-preconditioned) conjugate
// gradient solver for the SPD systems assembled by the elliptic and
// parabolic solvers.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "phaselab/error.hpp"

namespace phaselab {

class SparseMatrix {
 public:
  struct Triplet {
    std::int32_t row;
    std::int32_t col;
    double value;
  };

  /// Sorts by (row, col) and sums duplicate entries.
  static SparseMatrix from_triplets(std::int32_t n, std::vector<Triplet> entries);

  /// Validates offsets, sorted unique columns and finite values.
  SparseMatrix(std::int32_t n, std::vector<std::int64_t> row_ptr, std::vector<std::int32_t> col,
               std::vector<double> values);

  static SparseMatrix identity(std::int32_t n);

  std::int32_t n() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  std::span<const std::int64_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::int32_t> col_index() const noexcept { return col_; }
  std::span<const double> values() const noexcept { return values_; }

  /// 0 when (row, col) is not stored.
  double coeff(std::int32_t row, std::int32_t col) const;
  std::vector<double> diagonal() const;
  SparseMatrix transpose() const;
  /// max |A_ij - A_ji| over stored entries of either.
  double max_asymmetry() const;

 private:
  std::int32_t n_;
  std::vector<std::int64_t> row_ptr_;
  std::vector<std::int32_t> col_;
  std::vector<double> values_;
};

/// y = A x. Throws DimensionMismatch.
void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y);
std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x);

class JacobiPreconditioner {
 public:
  /// Throws ZeroDiagonal unless every diagonal entry is > 0.
  explicit JacobiPreconditioner(const SparseMatrix& a);

  void apply(std::span<const double> r, std::span<double> z) const;
  std::span<const double> inverse_diagonal() const noexcept { return inv_diag_; }

 private:
  std::vector<double> inv_diag_;
};

struct CgReport {
  int iterations = 0;
  double final_residual_rel = 0.0;
  bool converged = false;
};

struct CgResult {
  std::vector<double> x;
  CgReport report;
};

struct CgOptions {
  double tol_rel = 1e-10;
  /// <= 0 selects 10 n.
  int max_iter = 0;
  const JacobiPreconditioner* preconditioner = nullptr;
  /// Initial guess; zero when empty.
  std::span<const double> x0 = {};
  /// Called after every iteration with the current iterate.
  std::function<void(int, std::span<const double>)> on_iterate = {};
};

/// Solves A x = b for SPD A. Returns converged = false rather than throwing
/// when the iteration budget runs out; a NaN aborts with NotConverged.
/// converged = true guarantees ||b - A x|| <= tol_rel ||b|| for the true
/// residual.
CgResult conjugate_gradient(const SparseMatrix& a, std::span<const double> b,
                            const CgOptions& options = {});

/// Raised by solvers that need a converged CG solve.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, CgReport report)
      : Error(ErrorCode::NotConverged, what), report_(report) {}
  const CgReport& report() const noexcept { return report_; }

 private:
  CgReport report_;
};

}  // namespace phaselab
