#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sfnorm {

using Index = std::size_t;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Immutable backing store for a matrix. Sources never count anything;
/// instrumentation lives in MatrixOracle, the only access path estimators use.
/// Implementations must be safe for concurrent const access.
class MatrixSource {
 public:
  virtual ~MatrixSource() = default;

  virtual Index rows() const noexcept = 0;
  virtual Index cols() const noexcept = 0;
  virtual double entry(Index i, Index j) const = 0;

  virtual void read_column(Index j, std::span<double> out) const;
  virtual void read_row(Index i, std::span<double> out) const;
  /// y = A x, or y = A^T x when `transpose`.
  virtual void apply(std::span<const double> x, std::span<double> y, bool transpose) const;
  /// sum over stored entries of values[t] * column(cols[t]) (or row(cols[t]) when transposed).
  virtual void combine(std::span<const Index> indices, std::span<const double> values,
                       std::span<double> y, bool transpose) const;
  virtual std::vector<double> column_abs_sums() const;
  virtual double max_abs() const;
  virtual std::string describe() const { return "matrix"; }
};

/// Row-major dense storage. Rejects non-finite entries.
class DenseSource final : public MatrixSource {
 public:
  explicit DenseSource(RowMatrix data);

  Index rows() const noexcept override { return static_cast<Index>(data_.rows()); }
  Index cols() const noexcept override { return static_cast<Index>(data_.cols()); }
  double entry(Index i, Index j) const override { return data_(i, j); }
  void read_column(Index j, std::span<double> out) const override;
  void read_row(Index i, std::span<double> out) const override;
  void apply(std::span<const double> x, std::span<double> y, bool transpose) const override;
  void combine(std::span<const Index> indices, std::span<const double> values, std::span<double> y,
               bool transpose) const override;
  std::vector<double> column_abs_sums() const override;
  double max_abs() const override;
  std::string describe() const override { return "dense"; }

  const RowMatrix& data() const noexcept { return data_; }

 private:
  std::span<const double> flat() const { return {data_.data(), static_cast<std::size_t>(data_.size())}; }
  RowMatrix data_;
};

/// A^T view over another source; shares storage.
class TransposedSource final : public MatrixSource {
 public:
  explicit TransposedSource(std::shared_ptr<const MatrixSource> base) : base_(std::move(base)) {}

  Index rows() const noexcept override { return base_->cols(); }
  Index cols() const noexcept override { return base_->rows(); }
  double entry(Index i, Index j) const override { return base_->entry(j, i); }
  void read_column(Index j, std::span<double> out) const override { base_->read_row(j, out); }
  void read_row(Index i, std::span<double> out) const override { base_->read_column(i, out); }
  void apply(std::span<const double> x, std::span<double> y, bool transpose) const override {
    base_->apply(x, y, !transpose);
  }
  void combine(std::span<const Index> indices, std::span<const double> values, std::span<double> y,
               bool transpose) const override {
    base_->combine(indices, values, y, !transpose);
  }
  std::string describe() const override { return "transpose(" + base_->describe() + ")"; }

 private:
  std::shared_ptr<const MatrixSource> base_;
};

/// Zero-padded view: the base occupies the leading rows x cols block.
class PaddedSource final : public MatrixSource {
 public:
  PaddedSource(std::shared_ptr<const MatrixSource> base, Index rows, Index cols);

  Index rows() const noexcept override { return rows_; }
  Index cols() const noexcept override { return cols_; }
  double entry(Index i, Index j) const override;
  void read_column(Index j, std::span<double> out) const override;
  void read_row(Index i, std::span<double> out) const override;
  std::vector<double> column_abs_sums() const override;
  double max_abs() const override { return base_->max_abs(); }
  std::string describe() const override { return "padded(" + base_->describe() + ")"; }

 private:
  std::shared_ptr<const MatrixSource> base_;
  Index rows_;
  Index cols_;
};

/// Dense copy of any source (test and generator helper; reads through `entry`).
RowMatrix materialize(const MatrixSource& source);

}  // namespace sfnorm
