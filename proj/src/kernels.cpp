#include "sfnorm/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace sfnorm::kernels {

namespace {

// Column blocks small enough that a block of sums stays in L1.
constexpr std::size_t kColumnBlock = 256;

// Below this many entries the OpenMP fork/join costs more than it saves.
constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

bool go_parallel(std::size_t work) { return work >= kParallelThreshold && omp_get_max_threads() > 1; }

}  // namespace

namespace serial {

void column_abs_sums(std::span<const double> a, std::size_t m, std::size_t n, std::span<double> sums) {
  std::fill(sums.begin(), sums.end(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = a.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) sums[j] += std::abs(row[j]);
  }
}

double max_abs(std::span<const double> a) {
  double best = 0.0;
  for (double v : a) best = std::max(best, std::abs(v));
  return best;
}

void gemv(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
          std::span<double> y) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = a.data() + i * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_t(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
            std::span<double> y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = a.data() + i * n;
    const double xi = x[i];
    for (std::size_t j = 0; j < n; ++j) y[j] += row[j] * xi;
  }
}

void combine_columns(std::span<const double> a, std::size_t m, std::size_t n,
                     std::span<const std::size_t> cols, std::span<const double> values,
                     std::span<double> y) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = a.data() + i * n;
    double s = 0.0;
    for (std::size_t t = 0; t < cols.size(); ++t) s += values[t] * row[cols[t]];
    y[i] = s;
  }
}

void combine_rows(std::span<const double> a, std::size_t /*m*/, std::size_t n,
                  std::span<const std::size_t> rows, std::span<const double> values,
                  std::span<double> y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const double* row = a.data() + rows[t] * n;
    const double v = values[t];
    for (std::size_t j = 0; j < n; ++j) y[j] += v * row[j];
  }
}

}  // namespace serial

namespace omp {

void column_abs_sums(std::span<const double> a, std::size_t m, std::size_t n, std::span<double> sums) {
  if (!go_parallel(m * n)) return serial::column_abs_sums(a, m, n, sums);
  const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t j0 = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t j1 = std::min(n, j0 + kColumnBlock);
    for (std::size_t j = j0; j < j1; ++j) sums[j] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = a.data() + i * n;
      for (std::size_t j = j0; j < j1; ++j) sums[j] += std::abs(row[j]);
    }
  }
}

double max_abs(std::span<const double> a) {
  if (!go_parallel(a.size())) return serial::max_abs(a);
  double best = 0.0;
  const auto size = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::ptrdiff_t t = 0; t < size; ++t) best = std::max(best, std::abs(a[static_cast<std::size_t>(t)]));
  return best;
}

void gemv(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
          std::span<double> y) {
  if (!go_parallel(m * n)) return serial::gemv(a, m, n, x, y);
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double* row = a.data() + i * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_t(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
            std::span<double> y) {
  if (!go_parallel(m * n)) return serial::gemv_t(a, m, n, x, y);
  const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t j0 = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t j1 = std::min(n, j0 + kColumnBlock);
    for (std::size_t j = j0; j < j1; ++j) y[j] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = a.data() + i * n;
      const double xi = x[i];
      for (std::size_t j = j0; j < j1; ++j) y[j] += row[j] * xi;
    }
  }
}

void combine_columns(std::span<const double> a, std::size_t m, std::size_t n,
                     std::span<const std::size_t> cols, std::span<const double> values,
                     std::span<double> y) {
  if (!go_parallel(m * cols.size())) return serial::combine_columns(a, m, n, cols, values, y);
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double* row = a.data() + i * n;
    double s = 0.0;
    for (std::size_t t = 0; t < cols.size(); ++t) s += values[t] * row[cols[t]];
    y[i] = s;
  }
}

void combine_rows(std::span<const double> a, std::size_t m, std::size_t n,
                  std::span<const std::size_t> rows, std::span<const double> values,
                  std::span<double> y) {
  if (!go_parallel(n * rows.size())) return serial::combine_rows(a, m, n, rows, values, y);
  const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t j0 = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t j1 = std::min(n, j0 + kColumnBlock);
    for (std::size_t j = j0; j < j1; ++j) y[j] = 0.0;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const double* row = a.data() + rows[t] * n;
      const double v = values[t];
      for (std::size_t j = j0; j < j1; ++j) y[j] += v * row[j];
    }
  }
}

}  // namespace omp

}  // namespace sfnorm::kernels
