#include "sfnorm/alpha_search.hpp"

#include <cmath>

#include "sfnorm/errors.hpp"
#include "sfnorm/estimators.hpp"

namespace sfnorm {

std::string_view to_string(AlphaStop s) noexcept {
  switch (s) {
    case AlphaStop::InRange: return "IN_RANGE";
    case AlphaStop::GeometricMean: return "GEOMETRIC_MEAN";
    case AlphaStop::RangeCollapsed: return "RANGE_COLLAPSED";
    case AlphaStop::Budget: return "BUDGET";
  }
  return "?";
}

namespace {

enum class Move { Double, Halve, Stay };

void check_common(double alpha0, int tol_cap) {
  if (!(alpha0 >= 1.0) || !std::isfinite(alpha0)) throw ParameterError("alpha search: initial alpha must be >= 1");
  if (tol_cap < 2) throw ParameterError("alpha search: TOL must be >= 2");
}

GammaProbe estimator_probe(MatrixOracle& m, std::size_t k, int tol_cap) {
  return [&m, k, tol_cap](double alpha, RngStream& rng) {
    return sparsified_estimate_scaled_instrumented(m, k, tol_cap, alpha, rng);
  };
}

double initial_alpha(const MatrixOracle& m, std::size_t k) {
  if (k == 0) throw ParameterError("alpha search: k must be positive");
  return static_cast<double>(m.cols()) / static_cast<double>(k);
}

}  // namespace

AlphaSearchTrace alpha_search(const GammaProbe& probe, double alpha0, int tol_cap, RngStream& rng, int budget) {
  return alpha_search_vote(probe, alpha0, tol_cap, 1, rng, budget);
}

AlphaSearchTrace alpha_search_vote(const GammaProbe& probe, double alpha0, int tol_cap, int h, RngStream& rng,
                                   int budget) {
  check_common(alpha0, tol_cap);
  if (h < 1) throw ParameterError("alpha search: h must be positive");

  AlphaSearchTrace trace;
  double alpha = alpha0;
  Move previous = Move::Stay;
  std::uint64_t invocation = 0;

  for (int adjustments = 0;; ++adjustments) {
    AlphaProbe step{alpha, {}};
    int ones = 0;
    int tols = 0;
    for (int t = 0; t < h; ++t) {
      RngStream sub = rng.substream(invocation++);
      const int gamma = probe(alpha, sub);
      step.gammas.push_back(gamma);
      ones += gamma == 1;
      tols += gamma == tol_cap;
    }
    trace.alphas_tried.push_back(std::move(step));

    Move move = Move::Stay;
    if (2 * ones > h)
      move = Move::Double;
    else if (2 * tols > h)
      move = Move::Halve;

    if (move == Move::Stay) {
      trace.final_alpha = alpha;
      trace.stop = AlphaStop::InRange;
      return trace;
    }
    if (previous == Move::Double && move == Move::Halve) {
      trace.final_alpha = alpha / std::sqrt(2.0);
      trace.stop = AlphaStop::GeometricMean;
      return trace;
    }
    if (previous == Move::Halve && move == Move::Double) {
      trace.final_alpha = alpha * std::sqrt(2.0);
      trace.stop = AlphaStop::GeometricMean;
      return trace;
    }
    if (move == Move::Halve && alpha / 2.0 < 1.0) {
      trace.final_alpha = alpha;
      trace.stop = AlphaStop::RangeCollapsed;
      return trace;
    }
    if (adjustments == budget) {
      trace.final_alpha = alpha;
      trace.stop = AlphaStop::Budget;
      return trace;
    }
    alpha = move == Move::Double ? alpha * 2.0 : alpha / 2.0;
    previous = move;
  }
}

AlphaSearchTrace alpha_search_binary(const GammaProbe& probe, double lo, double hi, int tol_cap, RngStream& rng,
                                     double tol_beta, int budget) {
  if (!(lo >= 1.0) || !(lo < hi) || !std::isfinite(hi)) throw ParameterError("alpha_search_binary: need 1 <= lo < hi");
  if (!(tol_beta > 0.0)) throw ParameterError("alpha_search_binary: tol_beta must be positive");
  if (tol_cap < 2) throw ParameterError("alpha search: TOL must be >= 2");

  AlphaSearchTrace trace;
  for (int step = 0;; ++step) {
    const double beta = std::sqrt(lo * hi);
    // The bound on beta - 1 alone never fires once lo > 1 + tol_beta, so a
    // narrow range stops the search too.
    if (beta - 1.0 < tol_beta || hi / lo - 1.0 < tol_beta) {
      trace.final_alpha = beta;
      trace.stop = AlphaStop::RangeCollapsed;
      return trace;
    }
    if (step == budget) {
      trace.final_alpha = beta;
      trace.stop = AlphaStop::Budget;
      return trace;
    }
    RngStream sub = rng.substream(static_cast<std::uint64_t>(step));
    const int gamma = probe(beta, sub);
    trace.alphas_tried.push_back({beta, {gamma}});
    if (gamma == 1) {
      lo = beta;
    } else if (gamma == tol_cap) {
      hi = beta;
    } else {
      trace.final_alpha = beta;
      trace.stop = AlphaStop::InRange;
      return trace;
    }
  }
}

AlphaSearchTrace alpha_search(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng) {
  return alpha_search(estimator_probe(m, k, tol_cap), initial_alpha(m, k), tol_cap, rng);
}

AlphaSearchTrace alpha_search_vote(MatrixOracle& m, std::size_t k, int tol_cap, int h, RngStream& rng) {
  return alpha_search_vote(estimator_probe(m, k, tol_cap), initial_alpha(m, k), tol_cap, h, rng);
}

AlphaSearchTrace alpha_search_binary(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng, double lo,
                                     double hi, double tol_beta) {
  return alpha_search_binary(estimator_probe(m, k, tol_cap), lo, hi, tol_cap, rng, tol_beta);
}

}  // namespace sfnorm
