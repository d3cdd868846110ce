#include "sfnorm/sketch.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "sfnorm/errors.hpp"
#include "sfnorm/estimators.hpp"
#include "sfnorm/maxvol.hpp"

namespace sfnorm {

namespace {

constexpr double kPinvThreshold = 1e-12;

Index pad_to_multiple(Index n, Index multiple) { return (n + multiple - 1) / multiple * multiple; }

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

Eigen::Map<Eigen::VectorXd> as_vector(std::span<double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

std::string_view to_string(SketchKind k) noexcept {
  return k == SketchKind::Gaussian ? "gaussian" : "asrht";
}

SketchConfig SketchConfig::oversampled(Index r, SketchKind kind, std::uint64_t seed, int d) {
  const Index k = 2 * r + 1;
  return {kind, d, k, 2 * k, r, seed};
}

SketchConfig SketchConfig::benchmark(Index r, SketchKind kind, std::uint64_t seed, int d) {
  return {kind, d, 2 * r, r, r, seed};
}

// --- Hadamard ---------------------------------------------------------------

AbridgedHadamard::AbridgedHadamard(Index n, int d) : n_(n), d_(d), block_(0) {
  if (d < 0 || d >= 63) throw ParameterError("AbridgedHadamard: depth out of range");
  const Index blocks = Index{1} << d;
  if (n == 0 || n % blocks != 0) throw ParameterError("AbridgedHadamard: n must be divisible by 2^d");
  block_ = n / blocks;
}

double AbridgedHadamard::entry(Index i, Index j) const noexcept {
  if (i % block_ != j % block_) return 0.0;
  return (std::popcount((i / block_) & (j / block_)) & 1) ? -1.0 : 1.0;
}

std::vector<Index> AbridgedHadamard::support(Index i) const {
  std::vector<Index> out;
  out.reserve(Index{1} << d_);
  const Index offset = i % block_;
  for (Index q = 0; q < (Index{1} << d_); ++q) out.push_back(offset + q * block_);
  return out;
}

std::vector<double> AbridgedHadamard::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw ParameterError("AbridgedHadamard::multiply: dimension mismatch");
  std::vector<double> y(n_, 0.0);
  const Index blocks = Index{1} << d_;
  for (Index i = 0; i < n_; ++i) {
    const Index offset = i % block_;
    const Index p = i / block_;
    double s = 0.0;
    for (Index q = 0; q < blocks; ++q) {
      const double v = x[offset + q * block_];
      s += (std::popcount(p & q) & 1) ? -v : v;
    }
    y[i] = s;
  }
  return y;
}

RowMatrix AbridgedHadamard::dense() const {
  RowMatrix h = RowMatrix::Zero(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j : support(i)) h(i, j) = entry(i, j);
  return h;
}

// --- Abridged SRHT ------------------------------------------------------------

AbridgedSrht::AbridgedSrht(bool left, Index dim, int d, Index count, RngStream& rng)
    : left_(left),
      dim_(dim),
      hadamard_(pad_to_multiple(dim, Index{1} << d), d),
      scale_(std::sqrt(std::ldexp(1.0, d) / static_cast<double>(count))) {
  const Index padded = hadamard_.size();
  if (count == 0 || count > padded) throw ParameterError("AbridgedSrht: sample count out of range");
  signs_.resize(padded);
  for (auto& s : signs_) s = rng.sign();
  samples_ = sample_without_replacement(padded, count, rng);
}

AbridgedSrht AbridgedSrht::right(Index n, Index ell, int d, RngStream& rng) {
  return AbridgedSrht(false, n, d, ell, rng);
}

AbridgedSrht AbridgedSrht::left(Index m, Index k, int d, RngStream& rng) {
  return AbridgedSrht(true, m, d, k, rng);
}

SparseVector AbridgedSrht::line(Index t) const {
  const Index s = samples_.at(t);
  std::vector<SparseEntry> entries;
  for (Index c : hadamard_.support(s)) {
    if (c >= dim_) continue;
    entries.push_back({c, scale_ * signs_[c] * hadamard_.entry(s, c)});
  }
  return SparseVector(dim_, std::move(entries));
}

RowMatrix AbridgedSrht::dense() const {
  const Index count = samples();
  RowMatrix out = left_ ? RowMatrix::Zero(count, dim_) : RowMatrix::Zero(dim_, count);
  for (Index t = 0; t < count; ++t) {
    const SparseVector l = line(t);
    for (const auto& e : l.entries()) {
      if (left_)
        out(t, e.index) = e.value;
      else
        out(e.index, t) = e.value;
    }
  }
  return out;
}

Eigen::MatrixXd AbridgedSrht::apply(MatrixOracle& m) const {
  const Index count = samples();
  if (left_) {
    if (m.rows() != dim_) throw ParameterError("AbridgedSrht::apply: F is k x m, M must have m rows");
    Eigen::MatrixXd fm(count, m.cols());
    for (Index t = 0; t < count; ++t) {
      const auto row = m.sparse_matvec(line(t), /*transpose=*/true);
      fm.row(t) = as_vector(row).transpose();
    }
    return fm;
  }
  if (m.cols() != dim_) throw ParameterError("AbridgedSrht::apply: H is n x ell, M must have n columns");
  Eigen::MatrixXd mh(m.rows(), count);
  for (Index t = 0; t < count; ++t) {
    const auto col = m.sparse_matvec(line(t));
    mh.col(t) = as_vector(col);
  }
  return mh;
}

Eigen::MatrixXd AbridgedSrht::apply_left_dense(const Eigen::MatrixXd& a) const {
  if (!left_) throw ParameterError("apply_left_dense: right multiplier");
  if (static_cast<Index>(a.rows()) != dim_) throw ParameterError("apply_left_dense: dimension mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(samples(), a.cols());
  for (Index t = 0; t < samples(); ++t) {
    const SparseVector l = line(t);
    for (const auto& e : l.entries()) out.row(t) += e.value * a.row(e.index);
  }
  return out;
}

Eigen::MatrixXd gaussian_multiplier(Index rows, Index cols, RngStream& rng) {
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.normal();
  return g;
}

// --- Nystrom ------------------------------------------------------------------

namespace {

// Truncated pseudo-inverse; returns the number of singular values kept.
Index truncated_pinv(const Eigen::MatrixXd& a, Eigen::MatrixXd& pinv) {
  pinv = Eigen::MatrixXd::Zero(a.cols(), a.rows());
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) return 0;
  const double cutoff = kPinvThreshold * sigma(0);
  Index kept = 0;
  for (Eigen::Index t = 0; t < sigma.size(); ++t) {
    if (sigma(t) <= cutoff) break;
    pinv += svd.matrixV().col(t) * (1.0 / sigma(t)) * svd.matrixU().col(t).transpose();
    ++kept;
  }
  return kept;
}

}  // namespace

SketchLRA nystrom_lra(MatrixOracle& m, const SketchConfig& cfg) {
  if (cfg.r == 0 || cfg.r > std::min(cfg.k, cfg.ell))
    throw ParameterError("nystrom_lra: need 1 <= r <= min(k, ell)");
  if (cfg.k > m.rows() || cfg.ell > m.cols())
    throw ParameterError("nystrom_lra: sketch larger than the matrix");

  RngStream base(cfg.seed);
  RngStream left_rng = base.substream(0);
  RngStream right_rng = base.substream(1);

  Eigen::MatrixXd fm;
  Eigen::MatrixXd mh;
  Eigen::MatrixXd core;
  if (cfg.kind == SketchKind::Gaussian) {
    const Eigen::MatrixXd f = gaussian_multiplier(cfg.k, m.rows(), left_rng);
    const Eigen::MatrixXd h = gaussian_multiplier(m.cols(), cfg.ell, right_rng);
    // One pass over M serves both sketches.
    Eigen::MatrixXd a(m.rows(), m.cols());
    std::vector<double> row(m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
      m.row(i, row);
      a.row(i) = as_vector(std::span<const double>(row)).transpose();
    }
    fm = f * a;
    mh = a * h;
    core = f * mh;
    const std::uint64_t mn = std::uint64_t{m.rows()} * m.cols();
    m.charge_flops(2 * mn * (cfg.k + cfg.ell) + 2 * cfg.k * m.rows() * cfg.ell);
  } else {
    const auto f = AbridgedSrht::left(m.rows(), cfg.k, cfg.d, left_rng);
    const auto h = AbridgedSrht::right(m.cols(), cfg.ell, cfg.d, right_rng);
    fm = f.apply(m);
    mh = h.apply(m);
    core = f.apply_left_dense(mh);
  }

  SketchLRA lra;
  lra.pinv_threshold = kPinvThreshold;
  lra.rank = truncated_pinv(core, lra.Y);
  lra.X = std::move(mh);
  lra.Z = std::move(fm);
  return lra;
}

SketchLRA svd_truncate(const Eigen::MatrixXd& m, Index r) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index rank = std::min<Index>(r, static_cast<Index>(svd.singularValues().size()));
  const auto cols = static_cast<Eigen::Index>(rank);
  SketchLRA lra;
  lra.X = svd.matrixU().leftCols(cols);
  lra.Y = svd.singularValues().head(cols).asDiagonal();
  lra.Z = svd.matrixV().leftCols(cols).transpose();
  lra.rank = rank;
  return lra;
}

// --- Factored operator --------------------------------------------------------

FactoredSource::FactoredSource(const SketchLRA& lra) : x_(lra.X), w_(lra.Y * lra.Z) {
  if (x_.rows() == 0 || w_.cols() == 0) throw ParameterError("FactoredSource: empty factors");
}

void FactoredSource::read_column(Index j, std::span<double> out) const {
  as_vector(out) = x_ * w_.col(j);
}

void FactoredSource::read_row(Index i, std::span<double> out) const {
  as_vector(out) = (x_.row(i) * w_).transpose();
}

void FactoredSource::apply(std::span<const double> x, std::span<double> y, bool transpose) const {
  if (transpose)
    as_vector(y) = w_.transpose() * (x_.transpose() * as_vector(x));
  else
    as_vector(y) = x_ * (w_ * as_vector(x));
}

void FactoredSource::combine(std::span<const Index> indices, std::span<const double> values,
                             std::span<double> y, bool transpose) const {
  Eigen::VectorXd inner = Eigen::VectorXd::Zero(x_.cols());
  if (transpose) {
    for (std::size_t t = 0; t < indices.size(); ++t) inner += values[t] * x_.row(indices[t]).transpose();
    as_vector(y) = w_.transpose() * inner;
  } else {
    for (std::size_t t = 0; t < indices.size(); ++t) inner += values[t] * w_.col(indices[t]);
    as_vector(y) = x_ * inner;
  }
}

double FactoredSource::frobenius_norm() const {
  const Eigen::MatrixXd gx = x_.transpose() * x_;
  const Eigen::MatrixXd gw = w_ * w_.transpose();
  return std::sqrt(std::max(0.0, gx.cwiseProduct(gw).sum()));
}

// --- Norm estimation ----------------------------------------------------------

double power_iteration_two_norm(MatrixOracle& a, RngStream& rng, int max_iterations, double rel_tol) {
  std::vector<double> v(a.cols());
  for (auto& x : v) x = rng.normal();
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (!(norm > 0.0)) return 0.0;
  for (auto& x : v) x /= norm;

  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const auto y = a.matvec(v);
    auto z = a.matvec(y, /*transpose=*/true);
    const double next = std::sqrt(std::inner_product(z.begin(), z.end(), z.begin(), 0.0));
    if (!(next > 0.0)) return 0.0;
    for (std::size_t t = 0; t < z.size(); ++t) v[t] = z[t] / next;
    const bool converged = it > 0 && std::abs(next - lambda) <= rel_tol * next;
    lambda = next;
    if (converged) break;
  }
  return std::sqrt(lambda);
}

LraNormReport lra_norm_report(MatrixOracle& m, NormKind p, const SketchConfig& cfg) {
  if (cfg.r <= 1) throw ParameterError("lra_norm_estimate: rank must exceed 1");
  const CostReport before = m.cost();
  const SketchLRA lra = nystrom_lra(m, cfg);

  LraNormReport report;
  report.rank = lra.rank;
  report.sketch_cost = cost_since(before, m.cost());

  auto source = std::make_shared<FactoredSource>(lra);
  MatrixOracle product(source);
  RngStream rng = RngStream(cfg.seed).substream(2);
  switch (p) {
    case NormKind::One: report.estimate = baseline_estimate(product).estimate; break;
    case NormKind::Inf: {
      auto t = product.transposed();
      report.estimate = baseline_estimate(t).estimate;
      break;
    }
    case NormKind::Two: report.estimate = power_iteration_two_norm(product, rng); break;
    case NormKind::Frobenius: report.estimate = source->frobenius_norm(); break;
    case NormKind::MaxAbs: report.estimate = maxvol1_random_init(product, rng).value; break;
    default: throw ParameterError("lra_norm_estimate: unsupported norm");
  }
  return report;
}

double lra_norm_estimate(MatrixOracle& m, NormKind p, const SketchConfig& cfg) {
  return lra_norm_report(m, p, cfg).estimate;
}

NormInterval norm_bounds_from_p2(double nu2, double p, Index m, Index n) {
  if (!(nu2 >= 0.0)) throw ParameterError("norm_bounds_from_p2: nu2 must be non-negative");
  if (m == 0 || n == 0) throw ParameterError("norm_bounds_from_p2: empty shape");
  if (p == 0.0) return {nu2 / std::sqrt(static_cast<double>(m) * static_cast<double>(n)), nu2};
  if (!(p >= 1.0)) throw ParameterError("norm_bounds_from_p2: p must be 0 or >= 1");
  if (m != n) throw ParameterError("norm_bounds_from_p2: p-norm bounds need a square matrix");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double factor = std::pow(static_cast<double>(n), std::abs(inv_p - 0.5));
  return {nu2 / factor, nu2 * factor};
}

}  // namespace sfnorm
