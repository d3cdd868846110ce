#include "sfnorm/matrixgen.hpp"

#include <algorithm>
#include <cmath>

#include "sfnorm/errors.hpp"

namespace sfnorm {

namespace {

struct ClassName {
  MatrixClass cls;
  std::string_view name;
};

constexpr ClassName kNames[] = {
    {MatrixClass::FastDecay, "fast-decay"}, {MatrixClass::SlowDecay, "slow-decay"},
    {MatrixClass::OneSmallSv, "one-small-sv"}, {MatrixClass::OneLargeSv, "one-large-sv"},
    {MatrixClass::Cauchy, "cauchy"}, {MatrixClass::Random, "random"},
    {MatrixClass::Identity, "identity"}, {MatrixClass::Shaw, "shaw"},
    {MatrixClass::Gravity, "gravity"}, {MatrixClass::Slp, "slp"},
};

double log_uniform(double lo, double hi, RngStream& rng) {
  return std::pow(10.0, rng.uniform(std::log10(lo), std::log10(hi)));
}

Index nonzero_count(const std::vector<double>& sigma) {
  Index p = sigma.size();
  while (p > 0 && sigma[p - 1] == 0.0) --p;
  return p;
}

}  // namespace

std::string_view to_string(MatrixClass c) noexcept {
  for (const auto& entry : kNames)
    if (entry.cls == c) return entry.name;
  return "?";
}

std::optional<MatrixClass> parse_matrix_class(std::string_view name) {
  for (const auto& entry : kNames)
    if (entry.name == name) return entry.cls;
  return std::nullopt;
}

bool is_spectrum_class(MatrixClass c) noexcept {
  return c == MatrixClass::FastDecay || c == MatrixClass::SlowDecay || c == MatrixClass::OneSmallSv ||
         c == MatrixClass::OneLargeSv;
}

bool is_file_class(MatrixClass c) noexcept {
  return c == MatrixClass::Shaw || c == MatrixClass::Gravity || c == MatrixClass::Slp;
}

const std::vector<MatrixClass>& synthetic_classes() {
  static const std::vector<MatrixClass> classes = {
      MatrixClass::FastDecay, MatrixClass::SlowDecay, MatrixClass::Cauchy,
      MatrixClass::OneSmallSv, MatrixClass::OneLargeSv, MatrixClass::Random,
  };
  return classes;
}

std::vector<double> spectrum_sigma(MatrixClass cls, Index n, RngStream& rng) {
  if (n == 0) throw ParameterError("spectrum_sigma: n must be positive");
  std::vector<double> sigma(n, 1.0);
  switch (cls) {
    case MatrixClass::FastDecay:
      // 1-based i: 1 up to 20, 2^-(i-20) up to 100, then 0
      for (Index i = 21; i <= n; ++i) sigma[i - 1] = i <= 100 ? std::ldexp(1.0, -static_cast<int>(i - 20)) : 0.0;
      break;
    case MatrixClass::SlowDecay:
      for (Index i = 21; i <= n; ++i) {
        const double t = static_cast<double>(1 + i - 20);
        sigma[i - 1] = 1.0 / (t * t);
      }
      break;
    case MatrixClass::OneSmallSv: sigma[n - 1] = log_uniform(1e-16, 1e-3, rng); break;
    case MatrixClass::OneLargeSv: sigma[0] = log_uniform(1e3, 1e16, rng); break;
    default: throw ParameterError("spectrum_sigma: not a spectrum class");
  }
  return sigma;
}

Eigen::MatrixXd haar_orthogonal(Index n, Index cols, RngStream& rng) {
  if (cols == 0 || cols > n) throw ParameterError("haar_orthogonal: need 1 <= cols <= n");
  Eigen::MatrixXd g(n, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, cols);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

SpectrumMatrix gen_spectrum_dense(const SpectrumSpec& spec) {
  if (!is_spectrum_class(spec.cls)) throw ParameterError("gen_spectrum_matrix: not a spectrum class");
  RngStream base(spec.factor_seed);
  RngStream sigma_rng = base.substream(0);
  RngStream u_rng = base.substream(1);
  RngStream v_rng = base.substream(2);

  SpectrumMatrix out;
  out.sigma = spectrum_sigma(spec.cls, spec.n, sigma_rng);
  const Index p = nonzero_count(out.sigma);
  if (p == 0) {
    out.data = RowMatrix::Zero(spec.n, spec.n);
    return out;
  }
  const Eigen::MatrixXd u = haar_orthogonal(spec.n, p, u_rng);
  const Eigen::MatrixXd v = haar_orthogonal(spec.n, p, v_rng);
  const Eigen::Map<const Eigen::VectorXd> s(out.sigma.data(), static_cast<Eigen::Index>(p));
  out.data.noalias() = (u * s.asDiagonal()) * v.transpose();
  return out;
}

MatrixOracle gen_spectrum_matrix(const SpectrumSpec& spec) {
  return MatrixOracle::dense(gen_spectrum_dense(spec).data);
}

CauchySource::CauchySource(const CauchySpec& spec) {
  if (spec.n == 0) throw ParameterError("gen_cauchy: n must be positive");
  if (!(spec.a <= spec.b) || !(spec.c <= spec.d) || !(spec.b <= spec.c))
    throw ParameterError("gen_cauchy: need a <= b <= c <= d so the node sets do not interleave");
  RngStream base(spec.seed);
  RngStream e_rng = base.substream(0);
  x_.resize(spec.n);
  for (auto& x : x_) x = spec.a + (spec.b - spec.a) * e_rng.uniform();
  const double x_max = *std::max_element(x_.begin(), x_.end());

  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    RngStream f_rng = base.substream(1 + attempt);
    y_.resize(spec.n);
    for (auto& y : y_) y = spec.c + (spec.d - spec.c) * f_rng.uniform();
    const double y_min = *std::min_element(y_.begin(), y_.end());
    if (y_min - x_max >= 1e-12) return;
  }
  throw ParameterError("gen_cauchy: nodes closer than 1e-12 after regeneration");
}

double RandomPm1Source::entry(Index i, Index j) const {
  const std::uint64_t h = hash_counter(seed_, static_cast<std::uint64_t>(i) * n_ + j);
  const auto symbol = static_cast<int>((static_cast<unsigned __int128>(h) * 3) >> 64);
  return static_cast<double>(symbol - 1);
}

DeltaSource::DeltaSource(Index m, Index n, std::optional<std::pair<Index, Index>> unit)
    : m_(m), n_(n), unit_(unit) {
  if (m == 0 || n == 0) throw ParameterError("gen_delta: empty shape");
  if (unit && (unit->first >= m || unit->second >= n)) throw ParameterError("gen_delta: index out of range");
}

MatrixOracle gen_cauchy(const CauchySpec& spec) { return MatrixOracle(std::make_shared<CauchySource>(spec)); }

MatrixOracle gen_random_pm1(Index n, RngStream& rng) {
  if (n == 0) throw ParameterError("gen_random_pm1: n must be positive");
  return MatrixOracle(std::make_shared<RandomPm1Source>(n, n, rng.next_u64()));
}

MatrixOracle gen_delta(Index m, Index n, Index i, Index j) {
  return MatrixOracle(std::make_shared<DeltaSource>(m, n, std::make_pair(i, j)));
}

MatrixOracle gen_zero(Index m, Index n) { return MatrixOracle(std::make_shared<DeltaSource>(m, n)); }

MatrixOracle gen_identity(Index n) {
  if (n == 0) throw ParameterError("gen_identity: n must be positive");
  return MatrixOracle(std::make_shared<IdentitySource>(n));
}

MatrixOracle pad_to(const MatrixOracle& m, Index rows, Index cols) {
  if (rows == m.rows() && cols == m.cols()) return m.fresh_handle();
  return MatrixOracle(std::make_shared<PaddedSource>(m.shared_source(), rows, cols));
}

MatrixOracle generate(MatrixClass cls, Index n, std::uint64_t seed) {
  if (is_spectrum_class(cls)) return gen_spectrum_matrix({n, cls, seed});
  switch (cls) {
    case MatrixClass::Cauchy: {
      CauchySpec spec;
      spec.n = n;
      spec.seed = seed;
      return gen_cauchy(spec);
    }
    case MatrixClass::Random: {
      RngStream rng(seed);
      return gen_random_pm1(n, rng);
    }
    case MatrixClass::Identity: return gen_identity(n);
    default: throw ParameterError("generate: class " + std::string(to_string(cls)) + " is file-backed");
  }
}

}  // namespace sfnorm
