#include "sfnorm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sfnorm/errors.hpp"

namespace sfnorm {

MatrixOracle::MatrixOracle(std::shared_ptr<const MatrixSource> source) : source_(std::move(source)) {
  if (!source_) throw ParameterError("MatrixOracle: null source");
}

MatrixOracle MatrixOracle::dense(RowMatrix data) {
  return MatrixOracle(std::make_shared<DenseSource>(std::move(data)));
}

MatrixOracle MatrixOracle::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const Index m = rows.size();
  const Index n = m == 0 ? 0 : rows.begin()->size();
  RowMatrix data(m, n);
  Index i = 0;
  for (const auto& r : rows) {
    if (r.size() != n) throw ParameterError("from_rows: ragged rows");
    Index j = 0;
    for (double v : r) data(i, j++) = v;
    ++i;
  }
  return dense(std::move(data));
}

void MatrixOracle::check_row(Index i) const {
  if (i >= rows()) throw ParameterError("MatrixOracle: row index out of range");
}

void MatrixOracle::check_col(Index j) const {
  if (j >= cols()) throw ParameterError("MatrixOracle: column index out of range");
}

double MatrixOracle::entry(Index i, Index j) {
  check_row(i);
  check_col(j);
  charge_entries(1);
  if (logging_) access_[i * cols() + j] = 1;
  return source_->entry(i, j);
}

void MatrixOracle::column(Index j, std::span<double> out) {
  check_col(j);
  if (out.size() != rows()) throw ParameterError("MatrixOracle::column: output size mismatch");
  charge_entries(rows());
  log_column(j);
  source_->read_column(j, out);
}

std::vector<double> MatrixOracle::column(Index j) {
  std::vector<double> out(rows());
  column(j, out);
  return out;
}

void MatrixOracle::row(Index i, std::span<double> out) {
  check_row(i);
  if (out.size() != cols()) throw ParameterError("MatrixOracle::row: output size mismatch");
  charge_entries(cols());
  log_row(i);
  source_->read_row(i, out);
}

std::vector<double> MatrixOracle::row(Index i) {
  std::vector<double> out(cols());
  row(i, out);
  return out;
}

std::vector<double> MatrixOracle::sparse_matvec(const SparseVector& v, bool transpose) {
  const Index inner = transpose ? rows() : cols();
  const Index outer = transpose ? cols() : rows();
  if (v.dim() != inner) throw ParameterError("sparse_matvec: dimension mismatch");
  std::vector<Index> indices;
  std::vector<double> values;
  indices.reserve(v.size());
  values.reserve(v.size());
  for (const auto& e : v.entries()) {
    indices.push_back(e.index);
    values.push_back(e.value);
    if (transpose)
      log_row(e.index);
    else
      log_column(e.index);
  }
  std::vector<double> y(outer, 0.0);
  const std::uint64_t k = v.size();
  if (k > 0) {
    charge_entries(k * outer);
    charge_flops(2 * k * outer - outer);
    source_->combine(indices, values, y, transpose);
  }
  return y;
}

std::vector<double> MatrixOracle::matvec(std::span<const double> x, bool transpose) {
  const Index inner = transpose ? rows() : cols();
  const Index outer = transpose ? cols() : rows();
  if (x.size() != inner) throw ParameterError("matvec: dimension mismatch");
  std::vector<double> y(outer, 0.0);
  charge_entries(std::uint64_t{inner} * outer);
  charge_flops(2 * std::uint64_t{inner} * outer - outer);
  log_all();
  source_->apply(x, y, transpose);
  return y;
}

std::vector<double> MatrixOracle::column_abs_sums() {
  charge_entries(std::uint64_t{rows()} * cols());
  charge_flops(std::uint64_t{rows()} * cols());
  log_all();
  return source_->column_abs_sums();
}

double MatrixOracle::max_abs() {
  charge_entries(std::uint64_t{rows()} * cols());
  charge_comparisons(std::uint64_t{rows()} * cols() - 1);
  log_all();
  return source_->max_abs();
}

MatrixOracle MatrixOracle::transposed() const {
  return MatrixOracle(std::make_shared<TransposedSource>(source_));
}

void MatrixOracle::enable_access_log() {
  logging_ = true;
  access_.assign(rows() * cols(), 0);
}

void MatrixOracle::log_column(Index j) {
  if (!logging_) return;
  for (Index i = 0; i < rows(); ++i) access_[i * cols() + j] = 1;
}

void MatrixOracle::log_row(Index i) {
  if (!logging_) return;
  std::fill_n(access_.begin() + static_cast<std::ptrdiff_t>(i * cols()), cols(), 1);
}

void MatrixOracle::log_all() {
  if (logging_) std::fill(access_.begin(), access_.end(), 1);
}

double exact_one_norm(MatrixOracle& m) {
  const auto sums = m.column_abs_sums();
  return *std::max_element(sums.begin(), sums.end());
}

double exact_inf_norm(MatrixOracle& m) {
  std::vector<double> row(m.cols());
  double best = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    m.row(i, row);
    best = std::max(best, vector_one_norm(row));
  }
  return best;
}

double vector_one_norm(std::span<const double> v) noexcept {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

Index argmax_abs(std::span<const double> v) noexcept {
  Index best = 0;
  double best_value = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_value) {
      best_value = a;
      best = i;
    }
  }
  return best;
}

}  // namespace sfnorm
