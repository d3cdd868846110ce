#include "sfnorm/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "sfnorm/errors.hpp"

namespace sfnorm {

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::NuDecreased: return "NU_DECREASED";
    case StopReason::TolReached: return "TOL_REACHED";
    case StopReason::ScaledStop: return "SCALED_STOP";
    case StopReason::LocalMaximum: return "LOCAL_MAXIMUM";
  }
  return "UNKNOWN";
}

ProbeVectors ProbeVectors::make(std::size_t n) {
  if (n == 0) throw ParameterError("ProbeVectors: n must be positive");
  ProbeVectors p;
  p.g.assign(n, 1.0 / static_cast<double>(n));
  p.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double magnitude = n == 1 ? 1.0 : 1.0 + static_cast<double>(i) / static_cast<double>(n - 1);
    p.h[i] = (i % 2 == 0) ? magnitude : -magnitude;
  }
  return p;
}

BaselineReport baseline_estimate(MatrixOracle& m, int max_sweeps) {
  if (max_sweeps < 1) throw ParameterError("baseline_estimate: max_sweeps must be positive");
  const CostReport start = m.cost();
  const Index n = m.cols();
  const auto probes = ProbeVectors::make(n);

  BaselineReport report;
  std::vector<double> u = m.matvec(probes.g);
  report.mg_norm = vector_one_norm(u);
  report.estimate = report.mg_norm;

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    report.sweeps = sweep;
    const auto w = sign_vector(u);
    m.charge_signs(u.size());
    const auto x = m.matvec(w, /*transpose=*/true);
    const Index j = argmax_abs(x);
    m.charge_comparisons(x.size());
    // w^T u == ||u||_1 by construction of w.
    if (std::abs(x[j]) <= vector_one_norm(u)) break;
    u = m.column(j);
    const double nu = vector_one_norm(u);
    m.charge_comparisons(1);
    if (nu > report.estimate) {
      report.estimate = nu;
      report.column = j;
    }
  }

  const auto mh = m.matvec(probes.h);
  report.safeguard = 2.0 * vector_one_norm(mh) / (3.0 * static_cast<double>(n));
  m.charge_comparisons(1);
  if (report.safeguard > report.estimate) {
    report.estimate = report.safeguard;
    report.column.reset();
  }
  report.cost = cost_since(start, m.cost());
  return report;
}

namespace detail {

namespace {

SparseVector sparsified_probe(std::span<const double> v, std::size_t k, RngStream& rng) {
  // One resample on a zero-norm draw, then give up.
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      return normalize_one(k_sparsify(v, k, rng));
    } catch (const DegenerateVectorError&) {
    }
  }
  throw DegenerateVectorError("sparsified probe vector has zero 1-norm after resampling");
}

}  // namespace

EstimateReport run_sparsified(MatrixOracle& m, const SparsifiedOptions& opts, RngStream& rng) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (opts.k_n == 0 || opts.k_n > cols) throw ParameterError("sparsified estimator: need 1 <= k_n <= n");
  if (opts.k_m == 0 || opts.k_m > rows) throw ParameterError("sparsified estimator: need 1 <= k_m <= m");
  if (opts.tol_cap < 2) throw ParameterError("sparsified estimator: TOL must be at least 2");
  if (opts.rule != StopRule::Plain && !(opts.alpha >= 1.0))
    throw ParameterError("sparsified estimator: alpha must be >= 1");

  const CostReport start = m.cost();
  const auto probes = ProbeVectors::make(cols);

  // Initialization.
  const auto g_hat = sparsified_probe(probes.g, opts.k_n, rng);
  const auto h_hat = sparsified_probe(probes.h, opts.k_n, rng);
  auto mg = m.sparse_matvec(g_hat);
  auto mh = m.sparse_matvec(h_hat);
  m.charge_comparisons(1);
  std::vector<double> u = vector_one_norm(mg) >= vector_one_norm(mh) ? std::move(mg) : std::move(mh);

  EstimateReport report;
  double nu_prev = opts.rule == StopRule::Instrumented ? vector_one_norm(u) : -1.0;
  Index j_prev = 0;
  int gamma = 0;

  auto finish = [&](Index j, double nu, StopReason why) {
    report.j = j;
    report.nu = nu;
    report.gamma = gamma;
    report.stop = why;
    report.cost = cost_since(start, m.cost());
    return report;
  };

  for (;;) {
    // Stage 1: sparsified sign vector; only the k_m sampled signs are needed.
    const auto positions = sample_without_replacement(rows, opts.k_m, rng);
    std::vector<SparseEntry> w_entries;
    w_entries.reserve(positions.size());
    for (Index p : positions) w_entries.push_back({p, sign_of(u[p])});
    m.charge_signs(positions.size());
    const auto x = m.sparse_matvec(SparseVector(rows, std::move(w_entries)), /*transpose=*/true);
    ++gamma;

    // Stage 2.
    Index j = argmax_abs(x);
    const double x_inf = std::abs(x[j]);
    m.charge_comparisons(cols - 1);

    // Optional refinement (cross-approximation step).
    std::optional<RefinedColumn> refined;
    if (opts.refine) refined = opts.refine(gamma, j, m);

    // Stage 3.
    if (refined) {
      j = refined->j;
      u = std::move(refined->column);
    } else {
      u = m.column(j);
    }
    const double nu = vector_one_norm(u);
    m.charge_flops(rows - 1);
    report.nu_history.push_back(nu);

    // Stage 4.
    if (opts.rule == StopRule::Plain) {
      m.charge_comparisons(1);
      if (nu_prev >= nu) return finish(j_prev, nu_prev, StopReason::NuDecreased);
    } else {
      m.charge_comparisons(2);
      m.charge_flops(1);
      if (nu_prev >= std::min(opts.alpha * x_inf, nu)) return finish(j, nu, StopReason::ScaledStop);
    }

    // Stage 5.
    if (gamma == opts.tol_cap) return finish(j, nu, StopReason::TolReached);

    j_prev = j;
    nu_prev = nu;
  }
}

}  // namespace detail

EstimateReport sparsified_estimate_1(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng) {
  if (m.rows() != m.cols()) throw ParameterError("sparsified_estimate_1: square matrix expected");
  detail::SparsifiedOptions opts;
  opts.k_m = opts.k_n = k;
  opts.tol_cap = tol_cap;
  return detail::run_sparsified(m, opts, rng);
}

EstimateReport sparsified_estimate_scaled(MatrixOracle& m, std::size_t k, int tol_cap, double alpha,
                                          RngStream& rng) {
  if (m.rows() != m.cols()) throw ParameterError("sparsified_estimate_scaled: square matrix expected");
  detail::SparsifiedOptions opts;
  opts.k_m = opts.k_n = k;
  opts.tol_cap = tol_cap;
  opts.rule = detail::StopRule::Scaled;
  opts.alpha = alpha;
  return detail::run_sparsified(m, opts, rng);
}

int sparsified_estimate_scaled_instrumented(MatrixOracle& m, std::size_t k, int tol_cap, double alpha,
                                            RngStream& rng) {
  if (m.rows() != m.cols())
    throw ParameterError("sparsified_estimate_scaled_instrumented: square matrix expected");
  detail::SparsifiedOptions opts;
  opts.k_m = opts.k_n = k;
  opts.tol_cap = tol_cap;
  opts.rule = detail::StopRule::Instrumented;
  opts.alpha = alpha;
  return detail::run_sparsified(m, opts, rng).gamma;
}

EstimateReport sparsified_estimate_rect(MatrixOracle& m, std::size_t k_m, std::size_t k_n, int tol_cap,
                                        RngStream& rng, std::optional<double> alpha) {
  detail::SparsifiedOptions opts;
  opts.k_m = k_m;
  opts.k_n = k_n;
  opts.tol_cap = tol_cap;
  if (alpha) {
    opts.rule = detail::StopRule::Scaled;
    opts.alpha = *alpha;
  }
  return detail::run_sparsified(m, opts, rng);
}

}  // namespace sfnorm
