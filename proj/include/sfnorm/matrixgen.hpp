#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfnorm/matrix_source.hpp"
#include "sfnorm/oracle.hpp"
#include "sfnorm/rng.hpp"

namespace sfnorm {

enum class MatrixClass {
  FastDecay,
  SlowDecay,
  OneSmallSv,
  OneLargeSv,
  Cauchy,
  Random,
  Identity,  // debug class
  Shaw,      // file-backed
  Gravity,
  Slp,
};

std::string_view to_string(MatrixClass c) noexcept;
/// Accepts the CLI spellings: fast-decay, slow-decay, one-small-sv,
/// one-large-sv, cauchy, random, identity, shaw, gravity, slp.
std::optional<MatrixClass> parse_matrix_class(std::string_view name);
bool is_spectrum_class(MatrixClass c) noexcept;
bool is_file_class(MatrixClass c) noexcept;
/// The six synthetic classes in table order.
const std::vector<MatrixClass>& synthetic_classes();

/// U diag(sigma) V^T with Haar-distributed U, V.
struct SpectrumSpec {
  Index n = 1024;
  MatrixClass cls = MatrixClass::FastDecay;
  std::uint64_t factor_seed = 0;
};

/// sigma_1 >= ... >= sigma_n for the class. The random entry of the
/// one-small / one-large classes is log-uniform and drawn from `rng`.
std::vector<double> spectrum_sigma(MatrixClass cls, Index n, RngStream& rng);

/// First `cols` columns of an n x n Haar orthogonal matrix: Q of a Gaussian
/// n x cols matrix, with columns flipped so that diag(R) > 0.
Eigen::MatrixXd haar_orthogonal(Index n, Index cols, RngStream& rng);

struct SpectrumMatrix {
  RowMatrix data;
  std::vector<double> sigma;
};

/// Only the columns of U and V paired with nonzero sigma are generated.
SpectrumMatrix gen_spectrum_dense(const SpectrumSpec& spec);
MatrixOracle gen_spectrum_matrix(const SpectrumSpec& spec);

struct CauchySpec {
  Index n = 1024;
  double a = 0.0;
  double b = 100.0;
  double c = 100.0;
  double d = 200.0;
  std::uint64_t seed = 0;
};

/// Entries 1 / (x_i - y_j) computed on demand from the two node vectors.
class CauchySource final : public MatrixSource {
 public:
  explicit CauchySource(const CauchySpec& spec);

  Index rows() const noexcept override { return x_.size(); }
  Index cols() const noexcept override { return y_.size(); }
  double entry(Index i, Index j) const override { return 1.0 / (x_[i] - y_[j]); }
  std::string describe() const override { return "cauchy"; }

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// i.i.d. entries uniform over {-1, 0, 1}, a pure function of (seed, i, j).
class RandomPm1Source final : public MatrixSource {
 public:
  RandomPm1Source(Index m, Index n, std::uint64_t seed) : m_(m), n_(n), seed_(seed) {}

  Index rows() const noexcept override { return m_; }
  Index cols() const noexcept override { return n_; }
  double entry(Index i, Index j) const override;
  std::string describe() const override { return "random"; }

 private:
  Index m_;
  Index n_;
  std::uint64_t seed_;
};

/// Zero matrix, or a single unit entry at (i, j) when `unit` is set.
class DeltaSource final : public MatrixSource {
 public:
  DeltaSource(Index m, Index n, std::optional<std::pair<Index, Index>> unit = std::nullopt);

  Index rows() const noexcept override { return m_; }
  Index cols() const noexcept override { return n_; }
  double entry(Index i, Index j) const override {
    return unit_ && unit_->first == i && unit_->second == j ? 1.0 : 0.0;
  }
  std::string describe() const override { return unit_ ? "delta" : "zero"; }

 private:
  Index m_;
  Index n_;
  std::optional<std::pair<Index, Index>> unit_;
};

class IdentitySource final : public MatrixSource {
 public:
  explicit IdentitySource(Index n) : n_(n) {}

  Index rows() const noexcept override { return n_; }
  Index cols() const noexcept override { return n_; }
  double entry(Index i, Index j) const override { return i == j ? 1.0 : 0.0; }
  std::string describe() const override { return "identity"; }

 private:
  Index n_;
};

MatrixOracle gen_cauchy(const CauchySpec& spec);
MatrixOracle gen_random_pm1(Index n, RngStream& rng);
MatrixOracle gen_delta(Index m, Index n, Index i, Index j);
MatrixOracle gen_zero(Index m, Index n);
MatrixOracle gen_identity(Index n);
/// Zero-padded view; throws ParameterError when asked to shrink.
MatrixOracle pad_to(const MatrixOracle& m, Index rows, Index cols);

/// One instance of a synthetic class, seeded. File classes are not handled here.
MatrixOracle generate(MatrixClass cls, Index n, std::uint64_t seed);

}  // namespace sfnorm
