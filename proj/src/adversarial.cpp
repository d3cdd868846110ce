#include "sfnorm/adversarial.hpp"

#include <cmath>

#include "sfnorm/alpha_search.hpp"
#include "sfnorm/errors.hpp"
#include "sfnorm/estimators.hpp"
#include "sfnorm/maxvol.hpp"

namespace sfnorm {

namespace {

double run_once(Algorithm alg, MatrixOracle& m, std::size_t k, std::uint64_t seed, int tol_cap, Index r) {
  RngStream rng(seed);
  const double n_over_k = static_cast<double>(m.cols()) / static_cast<double>(k);
  switch (alg) {
    case Algorithm::Baseline: return baseline_estimate(m).estimate;
    case Algorithm::Alg21: return sparsified_estimate_1(m, k, tol_cap, rng).nu;
    case Algorithm::Alg22: return sparsified_estimate_scaled(m, k, tol_cap, n_over_k, rng).nu;
    case Algorithm::Alg31: return maxvol1_random_init(m, rng).value;
    case Algorithm::Alg31k: return maxvol1_k_init(m, k, tol_cap, rng).value;
    case Algorithm::Alg32: return sparsified_estimate_ca(m, k, tol_cap, 1, rng).nu;
    case Algorithm::Alg41: {
      const auto cfg = SketchConfig::benchmark(r, SketchKind::AbridgedSrht, seed);
      return lra_norm_estimate(m, NormKind::One, cfg);
    }
    case Algorithm::AlphaSearch: {
      RngStream search = rng.substream(1);
      const double alpha = alpha_search(m, k, tol_cap, search).final_alpha;
      return sparsified_estimate_scaled(m, k, tol_cap, alpha, rng).nu;
    }
    case Algorithm::Alg22a: break;
  }
  throw ParameterError("adversarial_replay: estimator has no norm output");
}

}  // namespace

AdversarialResult adversarial_replay(Algorithm alg, Index n, std::size_t k, std::uint64_t seed, int tol_cap, Index r) {
  AdversarialResult res;
  res.alg = alg;
  res.n = n;
  res.k = k;

  MatrixOracle zero = gen_zero(n, n);
  zero.enable_access_log();
  res.output_zero = run_once(alg, zero, k, seed, tol_cap, r);

  const auto& log = zero.access_log();
  for (std::size_t t = 0; t < log.size(); ++t) {
    if (log[t]) continue;
    if (!res.delta) res.delta = std::make_pair(t / n, t % n);
    ++res.unread;
  }
  if (!res.delta) return res;

  MatrixOracle delta = gen_delta(n, n, res.delta->first, res.delta->second);
  res.output_delta = run_once(alg, delta, k, seed, tol_cap, r);
  res.same_output = res.output_delta == res.output_zero;
  res.error = std::max(std::abs(res.output_zero), std::abs(res.output_delta - res.exact_delta));
  return res;
}

}  // namespace sfnorm
