#pragma once

#include <cstdint>
#include <optional>

#include "sfnorm/bench.hpp"

namespace sfnorm {

/// Replay of the delta-matrix argument: run an estimator on the zero matrix
/// with an access log, pick an entry it never read, and rerun on the matrix
/// that is zero except for a 1 at that entry.
struct AdversarialResult {
  Algorithm alg = Algorithm::Alg21;
  Index n = 0;
  std::size_t k = 0;
  std::size_t unread = 0;  // entries never touched on the zero matrix
  std::optional<std::pair<Index, Index>> delta;
  double output_zero = 0.0;
  double output_delta = 0.0;
  double exact_delta = 1.0;  // ||Delta||_1 = |Delta| = 1
  bool same_output = false;
  double error = 0.0;  // max(|output_zero - 0|, |output_delta - 1|)

  bool falsified() const { return delta && same_output && error >= 0.5; }
};

/// Estimators supported: alg21, alg22, alg31, alg31k, alg32, alg41 (3-ASRHT,
/// rank r), alpha-search. The baseline reads every entry, so it reports no
/// delta.
AdversarialResult adversarial_replay(Algorithm alg, Index n, std::size_t k, std::uint64_t seed, int tol_cap = 10,
                                     Index r = 2);

}  // namespace sfnorm
