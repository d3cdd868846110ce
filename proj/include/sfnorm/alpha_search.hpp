#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "sfnorm/oracle.hpp"
#include "sfnorm/rng.hpp"

namespace sfnorm {

enum class AlphaStop { InRange, GeometricMean, RangeCollapsed, Budget };

std::string_view to_string(AlphaStop s) noexcept;

/// One alpha value and the sweep counts observed there (h of them for a vote).
struct AlphaProbe {
  double alpha = 0.0;
  std::vector<int> gammas;
};

struct AlphaSearchTrace {
  std::vector<AlphaProbe> alphas_tried;
  double final_alpha = 1.0;
  AlphaStop stop = AlphaStop::Budget;
};

/// gamma as returned by the instrumented scaled estimator at a given alpha.
/// The stream passed in is a fresh substream per invocation.
using GammaProbe = std::function<int(double alpha, RngStream& rng)>;

inline constexpr int kAlphaSearchBudget = 64;
inline constexpr double kDefaultTolBeta = 0.01;

/// Doubling/halving search starting at alpha0 (n/k for a real matrix).
AlphaSearchTrace alpha_search(const GammaProbe& probe, double alpha0, int tol_cap, RngStream& rng,
                              int budget = kAlphaSearchBudget);
/// Majority vote over h probes per alpha. h = 1 is alpha_search.
AlphaSearchTrace alpha_search_vote(const GammaProbe& probe, double alpha0, int tol_cap, int h, RngStream& rng,
                                   int budget = kAlphaSearchBudget);
/// Bisection of log(alpha) on [lo, hi].
AlphaSearchTrace alpha_search_binary(const GammaProbe& probe, double lo, double hi, int tol_cap,
                                     RngStream& rng, double tol_beta = kDefaultTolBeta,
                                     int budget = kAlphaSearchBudget);

/// The same searches driven by the instrumented estimator on M. All reads are
/// charged to `m`.
AlphaSearchTrace alpha_search(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng);
AlphaSearchTrace alpha_search_vote(MatrixOracle& m, std::size_t k, int tol_cap, int h, RngStream& rng);
AlphaSearchTrace alpha_search_binary(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng, double lo,
                                     double hi, double tol_beta = kDefaultTolBeta);

}  // namespace sfnorm
