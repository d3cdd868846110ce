#pragma once

#include <vector>

#include "sfnorm/estimators.hpp"
#include "sfnorm/oracle.hpp"
#include "sfnorm/rng.hpp"

namespace sfnorm {

/// Output of rank-1 maxvol: |m(i, j)| is maximal in both its row and its column.
struct PivotResult {
  Index i = 0;
  Index j = 0;
  double value = 0.0;
  /// Row and column argmax sweeps, including the initial column scan.
  int argmax_count = 0;
  /// |m(i, j)| after each accepted pivot move (strictly increasing).
  std::vector<double> value_history;
};

/// Alternating row/column argmax starting from column `j_init`, until a sweep
/// fails to strictly increase |m(i, j)|. Ties go to the lowest index.
PivotResult maxvol1(MatrixOracle& m, Index j_init);

/// maxvol1 on M^T starting from row `i_init`; the result is reported in M's
/// coordinates. Reads are charged to `m`.
PivotResult maxvol1_dual(MatrixOracle& m, Index i_init);

/// maxvol1 from a uniformly random starting column.
PivotResult maxvol1_random_init(MatrixOracle& m, RngStream& rng);

/// maxvol1 started from the column returned by sparsified_estimate_1.
PivotResult maxvol1_k_init(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng);

/// max |m(g, h)| over all entries. Full scan.
double exact_max_abs(MatrixOracle& m);

/// Sparsified estimator with cross-approximation steps: for sweeps
/// gamma <= ca_tol the argmax column j(gamma) seeds maxvol1 and is replaced by
/// the maxvol column when that column has a strictly larger 1-norm.
EstimateReport sparsified_estimate_ca(MatrixOracle& m, std::size_t k, int tol_cap, int ca_tol,
                                      RngStream& rng);

}  // namespace sfnorm
