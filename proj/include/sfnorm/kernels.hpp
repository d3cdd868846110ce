#pragma once

// Dense row-major kernels behind the reference matrix storage.
//
// Every kernel exists twice: `serial` is the plain reference loop used by the
// tests as ground truth, `omp` is the OpenMP version used in production.
// The OpenMP versions partition work so that each output element is
// accumulated in the same order as in the serial loop, which keeps the two
// bit-identical.

#include <cstddef>
#include <span>

namespace sfnorm::kernels {

namespace serial {

/// sums[j] = sum_i |a(i, j)|
void column_abs_sums(std::span<const double> a, std::size_t m, std::size_t n, std::span<double> sums);
double max_abs(std::span<const double> a);
/// y = A x
void gemv(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
          std::span<double> y);
/// y = A^T x
void gemv_t(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
            std::span<double> y);
/// y = sum_t values[t] * A(:, cols[t])
void combine_columns(std::span<const double> a, std::size_t m, std::size_t n,
                     std::span<const std::size_t> cols, std::span<const double> values,
                     std::span<double> y);
/// y = sum_t values[t] * A(rows[t], :)
void combine_rows(std::span<const double> a, std::size_t m, std::size_t n,
                  std::span<const std::size_t> rows, std::span<const double> values,
                  std::span<double> y);

}  // namespace serial

namespace omp {

void column_abs_sums(std::span<const double> a, std::size_t m, std::size_t n, std::span<double> sums);
double max_abs(std::span<const double> a);
void gemv(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
          std::span<double> y);
void gemv_t(std::span<const double> a, std::size_t m, std::size_t n, std::span<const double> x,
            std::span<double> y);
void combine_columns(std::span<const double> a, std::size_t m, std::size_t n,
                     std::span<const std::size_t> cols, std::span<const double> values,
                     std::span<double> y);
void combine_rows(std::span<const double> a, std::size_t m, std::size_t n,
                  std::span<const std::size_t> rows, std::span<const double> values,
                  std::span<double> y);

}  // namespace omp

}  // namespace sfnorm::kernels
