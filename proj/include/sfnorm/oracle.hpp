#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sfnorm/cost.hpp"
#include "sfnorm/matrix_source.hpp"
#include "sfnorm/sparse_vector.hpp"

namespace sfnorm {

/// Counting handle over an immutable MatrixSource.
///
/// Every read is charged to this handle: entry() costs 1, column() costs m,
/// row() costs n, a product with a k-sparse vector costs k*m entries and
/// 2km - m flops (k*n and 2kn - n for the transposed product), a dense
/// product costs m*n entries. One estimator run owns one handle; concurrent
/// runs take separate handles over the same source via fresh_handle().
class MatrixOracle {
 public:
  explicit MatrixOracle(std::shared_ptr<const MatrixSource> source);

  static MatrixOracle dense(RowMatrix data);
  static MatrixOracle from_rows(std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const noexcept { return source_->rows(); }
  Index cols() const noexcept { return source_->cols(); }

  double entry(Index i, Index j);
  void column(Index j, std::span<double> out);
  std::vector<double> column(Index j);
  void row(Index i, std::span<double> out);
  std::vector<double> row(Index i);

  /// M v, or M^T v when `transpose`; touches only the stored positions of v.
  std::vector<double> sparse_matvec(const SparseVector& v, bool transpose = false);
  /// Dense product; reads every entry.
  std::vector<double> matvec(std::span<const double> x, bool transpose = false);

  /// Full scans, charged m*n entries.
  std::vector<double> column_abs_sums();
  double max_abs();

  const CostReport& cost() const noexcept { return cost_; }
  void reset_cost() noexcept { cost_ = {}; }
  void charge_flops(std::uint64_t n) noexcept { cost_.flops = saturating_add(cost_.flops, n); }
  void charge_comparisons(std::uint64_t n) noexcept {
    cost_.comparisons = saturating_add(cost_.comparisons, n);
  }
  void charge_signs(std::uint64_t n) noexcept { cost_.sign_evals = saturating_add(cost_.sign_evals, n); }

  /// New handle over the same storage with zeroed counters and no access log.
  MatrixOracle fresh_handle() const { return MatrixOracle(source_); }
  /// New handle over the transposed view.
  MatrixOracle transposed() const;

  /// Record which (i, j) entries are touched from now on (row-major flags).
  void enable_access_log();
  const std::vector<char>& access_log() const noexcept { return access_; }

  const MatrixSource& source() const noexcept { return *source_; }
  const std::shared_ptr<const MatrixSource>& shared_source() const noexcept { return source_; }

 private:
  void charge_entries(std::uint64_t n) noexcept {
    cost_.entries_read = saturating_add(cost_.entries_read, n);
  }
  void log_column(Index j);
  void log_row(Index i);
  void log_all();
  void check_row(Index i) const;
  void check_col(Index j) const;

  std::shared_ptr<const MatrixSource> source_;
  CostReport cost_;
  bool logging_ = false;
  std::vector<char> access_;
};

/// Free-function forms used throughout the estimators.
inline std::vector<double> sparse_matvec(MatrixOracle& m, const SparseVector& v, bool transpose = false) {
  return m.sparse_matvec(v, transpose);
}

/// max_j sum_i |m_ij|. Reads the whole matrix.
double exact_one_norm(MatrixOracle& m);
/// max_i sum_j |m_ij| = ||M^T||_1.
double exact_inf_norm(MatrixOracle& m);

double vector_one_norm(std::span<const double> v) noexcept;
/// Index of the entry of largest magnitude; lowest index wins ties.
Index argmax_abs(std::span<const double> v) noexcept;

}  // namespace sfnorm
