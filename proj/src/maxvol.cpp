#include "sfnorm/maxvol.hpp"

#include <cmath>

#include "sfnorm/errors.hpp"

namespace sfnorm {

namespace {

// maxvol1 on M (transposed == false) or on M^T (transposed == true), reading
// through the same handle so costs land on the caller's counters.
PivotResult maxvol_core(MatrixOracle& m, Index start, bool transposed) {
  const Index lines = transposed ? m.rows() : m.cols();  // "columns" of the working matrix
  const Index length = transposed ? m.cols() : m.rows();  // entries per working column
  if (start >= lines) throw ParameterError("maxvol1: initial index out of range");

  std::vector<double> col(length);
  std::vector<double> row(lines);
  auto read_col = [&](Index j) { transposed ? m.row(j, col) : m.column(j, col); };
  auto read_row = [&](Index i) { transposed ? m.column(i, row) : m.row(i, row); };

  PivotResult r;
  r.j = start;
  read_col(r.j);
  r.i = argmax_abs(col);
  m.charge_comparisons(length - 1);
  r.value = std::abs(col[r.i]);
  r.argmax_count = 1;
  r.value_history.push_back(r.value);

  // Every non-terminal sweep strictly increases the pivot magnitude, so
  // m + n sweeps can only be exceeded under arithmetic anomalies.
  const int cap = static_cast<int>(m.rows() + m.cols()) + 1;
  for (;;) {
    read_row(r.i);
    const Index j_bar = argmax_abs(row);
    m.charge_comparisons(lines - 1);
    ++r.argmax_count;
    if (!(std::abs(row[j_bar]) > r.value)) break;
    r.j = j_bar;
    r.value = std::abs(row[j_bar]);
    r.value_history.push_back(r.value);

    read_col(r.j);
    const Index i_bar = argmax_abs(col);
    m.charge_comparisons(length - 1);
    ++r.argmax_count;
    if (!(std::abs(col[i_bar]) > r.value)) break;
    r.i = i_bar;
    r.value = std::abs(col[i_bar]);
    r.value_history.push_back(r.value);

    if (r.argmax_count > cap) throw ConvergenceError("maxvol1: sweep cap exceeded");
  }
  return r;
}

}  // namespace

PivotResult maxvol1(MatrixOracle& m, Index j_init) { return maxvol_core(m, j_init, false); }

PivotResult maxvol1_dual(MatrixOracle& m, Index i_init) {
  PivotResult r = maxvol_core(m, i_init, true);
  std::swap(r.i, r.j);
  return r;
}

PivotResult maxvol1_random_init(MatrixOracle& m, RngStream& rng) {
  return maxvol1(m, static_cast<Index>(rng.uniform_index(m.cols())));
}

PivotResult maxvol1_k_init(MatrixOracle& m, std::size_t k, int tol_cap, RngStream& rng) {
  const auto est = sparsified_estimate_1(m, k, tol_cap, rng);
  return maxvol1(m, est.j);
}

double exact_max_abs(MatrixOracle& m) { return m.max_abs(); }

EstimateReport sparsified_estimate_ca(MatrixOracle& m, std::size_t k, int tol_cap, int ca_tol,
                                      RngStream& rng) {
  if (m.rows() != m.cols()) throw ParameterError("sparsified_estimate_ca: square matrix expected");
  if (ca_tol < 1 || ca_tol >= tol_cap) throw ParameterError("sparsified_estimate_ca: need 1 <= tol < TOL");

  detail::SparsifiedOptions opts;
  opts.k_m = opts.k_n = k;
  opts.tol_cap = tol_cap;
  opts.refine = [ca_tol](int gamma, Index j, MatrixOracle& oracle) -> std::optional<detail::RefinedColumn> {
    if (gamma > ca_tol) return std::nullopt;
    const PivotResult pivot = maxvol1(oracle, j);
    auto current = oracle.column(j);
    if (pivot.j == j) return detail::RefinedColumn{j, std::move(current)};
    auto candidate = oracle.column(pivot.j);
    oracle.charge_comparisons(1);
    if (vector_one_norm(candidate) > vector_one_norm(current))
      return detail::RefinedColumn{pivot.j, std::move(candidate)};
    return detail::RefinedColumn{j, std::move(current)};
  };
  return detail::run_sparsified(m, opts, rng);
}

}  // namespace sfnorm
