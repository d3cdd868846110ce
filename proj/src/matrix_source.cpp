#include "sfnorm/matrix_source.hpp"

#include <algorithm>
#include <cmath>

#include "sfnorm/errors.hpp"
#include "sfnorm/kernels.hpp"

namespace sfnorm {

void MatrixSource::read_column(Index j, std::span<double> out) const {
  for (Index i = 0; i < rows(); ++i) out[i] = entry(i, j);
}

void MatrixSource::read_row(Index i, std::span<double> out) const {
  for (Index j = 0; j < cols(); ++j) out[j] = entry(i, j);
}

void MatrixSource::apply(std::span<const double> x, std::span<double> y, bool transpose) const {
  const Index m = rows();
  const Index n = cols();
  std::fill(y.begin(), y.end(), 0.0);
  if (!transpose) {
    std::vector<double> column(m);
    for (Index j = 0; j < n; ++j) {
      read_column(j, column);
      for (Index i = 0; i < m; ++i) y[i] += x[j] * column[i];
    }
  } else {
    std::vector<double> row(n);
    for (Index i = 0; i < m; ++i) {
      read_row(i, row);
      for (Index j = 0; j < n; ++j) y[j] += x[i] * row[j];
    }
  }
}

void MatrixSource::combine(std::span<const Index> indices, std::span<const double> values,
                           std::span<double> y, bool transpose) const {
  std::fill(y.begin(), y.end(), 0.0);
  std::vector<double> line(y.size());
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (transpose)
      read_row(indices[t], line);
    else
      read_column(indices[t], line);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += values[t] * line[i];
  }
}

std::vector<double> MatrixSource::column_abs_sums() const {
  std::vector<double> sums(cols(), 0.0);
  std::vector<double> row(cols());
  for (Index i = 0; i < rows(); ++i) {
    read_row(i, row);
    for (Index j = 0; j < cols(); ++j) sums[j] += std::abs(row[j]);
  }
  return sums;
}

double MatrixSource::max_abs() const {
  double best = 0.0;
  std::vector<double> row(cols());
  for (Index i = 0; i < rows(); ++i) {
    read_row(i, row);
    for (double v : row) best = std::max(best, std::abs(v));
  }
  return best;
}

DenseSource::DenseSource(RowMatrix data) : data_(std::move(data)) {
  if (data_.rows() == 0 || data_.cols() == 0) throw ParameterError("DenseSource: empty matrix");
  if (!data_.allFinite()) throw ParameterError("DenseSource: matrix has non-finite entries");
}

void DenseSource::read_column(Index j, std::span<double> out) const {
  const Index m = rows();
  const Index n = cols();
  const double* base = data_.data() + j;
  for (Index i = 0; i < m; ++i) out[i] = base[i * n];
}

void DenseSource::read_row(Index i, std::span<double> out) const {
  const double* row = data_.data() + i * cols();
  std::copy(row, row + cols(), out.begin());
}

void DenseSource::apply(std::span<const double> x, std::span<double> y, bool transpose) const {
  if (transpose)
    kernels::omp::gemv_t(flat(), rows(), cols(), x, y);
  else
    kernels::omp::gemv(flat(), rows(), cols(), x, y);
}

void DenseSource::combine(std::span<const Index> indices, std::span<const double> values,
                          std::span<double> y, bool transpose) const {
  if (transpose)
    kernels::omp::combine_rows(flat(), rows(), cols(), indices, values, y);
  else
    kernels::omp::combine_columns(flat(), rows(), cols(), indices, values, y);
}

std::vector<double> DenseSource::column_abs_sums() const {
  std::vector<double> sums(cols());
  kernels::omp::column_abs_sums(flat(), rows(), cols(), sums);
  return sums;
}

double DenseSource::max_abs() const { return kernels::omp::max_abs(flat()); }

PaddedSource::PaddedSource(std::shared_ptr<const MatrixSource> base, Index rows, Index cols)
    : base_(std::move(base)), rows_(rows), cols_(cols) {
  if (rows_ < base_->rows() || cols_ < base_->cols())
    throw ParameterError("pad_to: target shape is smaller than the matrix");
}

double PaddedSource::entry(Index i, Index j) const {
  if (i >= base_->rows() || j >= base_->cols()) return 0.0;
  return base_->entry(i, j);
}

void PaddedSource::read_column(Index j, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (j < base_->cols()) base_->read_column(j, out.first(base_->rows()));
}

void PaddedSource::read_row(Index i, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (i < base_->rows()) base_->read_row(i, out.first(base_->cols()));
}

std::vector<double> PaddedSource::column_abs_sums() const {
  auto sums = base_->column_abs_sums();
  sums.resize(cols_, 0.0);
  return sums;
}

RowMatrix materialize(const MatrixSource& source) {
  RowMatrix out(source.rows(), source.cols());
  for (Index i = 0; i < source.rows(); ++i)
    source.read_row(i, std::span<double>(out.data() + i * source.cols(), source.cols()));
  return out;
}

}  // namespace sfnorm
