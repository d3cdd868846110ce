#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sfnorm/cost.hpp"
#include "sfnorm/oracle.hpp"
#include "sfnorm/rng.hpp"

namespace sfnorm {

enum class StopReason {
  NuDecreased,   // the new column norm did not exceed the previous one
  TolReached,    // sweep cap hit
  ScaledStop,    // scaled comparison against alpha * ||x||_inf fired
  LocalMaximum,  // baseline only: ||x||_inf <= w^T u
};

std::string_view to_string(StopReason r) noexcept;

/// Result of a column-probing 1-norm estimator. `nu` is always the exact
/// 1-norm of column `j`, so nu <= ||M||_1.
struct EstimateReport {
  Index j = 0;
  double nu = 0.0;
  int gamma = 0;
  StopReason stop = StopReason::TolReached;
  CostReport cost;
  /// nu_1, nu_2, ... in sweep order.
  std::vector<double> nu_history;
};

/// The two probe vectors of the classical estimator: g = (1/n, ..., 1/n) and
/// h_i = (-1)^(i-1) (1 + (i-1)/(n-1)) (1-based i).
struct ProbeVectors {
  std::vector<double> g;
  std::vector<double> h;
  static ProbeVectors make(std::size_t n);
};

struct BaselineReport {
  double estimate = 0.0;
  int sweeps = 0;
  /// Column whose norm produced the estimate; empty when the estimate came
  /// from ||M g||_1 or the alternating-sign safeguard.
  std::optional<Index> column;
  double mg_norm = 0.0;
  double safeguard = 0.0;  // 2 ||M h||_1 / (3n)
  CostReport cost;
};

/// Classical (dense-probe) 1-norm estimator with the alternating-sign
/// safeguard, capped at five sweeps. Reads the whole matrix on every sweep.
BaselineReport baseline_estimate(MatrixOracle& m, int max_sweeps = 5);

/// Sparsified estimator without scaling.
EstimateReport sparsified_estimate_1(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng);

/// Sparsified estimator whose stop test compares against min(alpha ||x||_inf, nu).
EstimateReport sparsified_estimate_scaled(MatrixOracle& m, std::size_t k, int tol_cap, double alpha,
                                          RngStream& rng);

/// Variant used by the alpha search: nu_0 starts at ||u||_1 and only the sweep
/// count is returned.
int sparsified_estimate_scaled_instrumented(MatrixOracle& m, std::size_t k, int tol_cap, double alpha,
                                            RngStream& rng);

/// Rectangular form: g and h are sparsified to k_n positions, w to k_m.
/// Scaled stopping when `alpha` is given.
EstimateReport sparsified_estimate_rect(MatrixOracle& m, std::size_t k_m, std::size_t k_n, int tol_cap,
                                        RngStream& rng, std::optional<double> alpha = std::nullopt);

namespace detail {

enum class StopRule { Plain, Scaled, Instrumented };

/// Column chosen by a refinement step, with its already-read contents.
struct RefinedColumn {
  Index j;
  std::vector<double> column;
};

/// Called after the argmax of sweep `gamma` picked column `j`. Returning a
/// value replaces j(gamma) and supplies the column so it is not read twice.
using RefineHook = std::function<std::optional<RefinedColumn>(int gamma, Index j, MatrixOracle& m)>;

struct SparsifiedOptions {
  std::size_t k_m = 1;
  std::size_t k_n = 1;
  int tol_cap = 10;
  StopRule rule = StopRule::Plain;
  double alpha = 1.0;
  RefineHook refine;
};

EstimateReport run_sparsified(MatrixOracle& m, const SparsifiedOptions& opts, RngStream& rng);

}  // namespace detail

}  // namespace sfnorm
