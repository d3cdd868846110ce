#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sfnorm/matrix_source.hpp"
#include "sfnorm/oracle.hpp"
#include "sfnorm/rng.hpp"
#include "sfnorm/sparse_vector.hpp"

namespace sfnorm {

enum class SketchKind { Gaussian, AbridgedSrht };

std::string_view to_string(SketchKind k) noexcept;

/// Multiplier shapes for generalized Nystrom: left F is k x m, right H is n x ell.
struct SketchConfig {
  SketchKind kind = SketchKind::Gaussian;
  int d = 3;  // abridgement depth, SRHT only
  Index k = 0;
  Index ell = 0;
  Index r = 0;
  std::uint64_t seed = 0;

  /// k = 2r + 1, ell = 2k: the shape with the factor-2 Frobenius guarantee.
  static SketchConfig oversampled(Index r, SketchKind kind, std::uint64_t seed, int d = 3);
  /// F is 2r x n, H is n x r: the shape used for norm estimation benchmarks.
  static SketchConfig benchmark(Index r, SketchKind kind, std::uint64_t seed, int d = 3);
};

/// Rank-r approximation M ~ X Y Z with X: m x kx, Y: kx x ly, Z: ly x n.
struct SketchLRA {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
  Eigen::MatrixXd Z;
  Index rank = 0;
  double pinv_threshold = 0.0;  // relative singular-value cutoff used for Y

  Index rows() const { return static_cast<Index>(X.rows()); }
  Index cols() const { return static_cast<Index>(Z.cols()); }
  Eigen::MatrixXd dense() const { return X * (Y * Z); }
};

/// Implicit H_{d,d}: 2^d x 2^d Sylvester Hadamard blocks of identities I_{n/2^d}.
/// Exactly 2^d nonzeros (+-1) in every row and column.
class AbridgedHadamard {
 public:
  AbridgedHadamard(Index n, int d);

  Index size() const noexcept { return n_; }
  int depth() const noexcept { return d_; }
  Index block() const noexcept { return block_; }
  double entry(Index i, Index j) const noexcept;
  /// Column indices holding the nonzeros of row i (also the row indices of
  /// column i, since H is symmetric).
  std::vector<Index> support(Index i) const;
  /// y = H x using (2^d - 1) n additions.
  std::vector<double> multiply(std::span<const double> x) const;
  RowMatrix dense() const;

 private:
  Index n_;
  int d_;
  Index block_;
};

/// d-Abridged SRHT multiplier, sqrt(2^d / s) R H_{d,d} D with s sampled lines.
/// Right form is n x ell (columns sampled), left form is k x m (rows sampled).
/// Dimensions not divisible by 2^d are zero-padded internally; nonzeros that
/// land in the padding are dropped.
class AbridgedSrht {
 public:
  static AbridgedSrht right(Index n, Index ell, int d, RngStream& rng);
  static AbridgedSrht left(Index m, Index k, int d, RngStream& rng);

  bool is_left() const noexcept { return left_; }
  Index dim() const noexcept { return dim_; }        // n (right) or m (left)
  Index samples() const noexcept { return samples_.size(); }
  double scale() const noexcept { return scale_; }
  const std::vector<Index>& sampled() const noexcept { return samples_; }
  const std::vector<double>& signs() const noexcept { return signs_; }
  const AbridgedHadamard& hadamard() const noexcept { return hadamard_; }

  /// Nonzeros of column t (right form) or row t (left form).
  SparseVector line(Index t) const;
  /// n x ell (right) or k x m (left).
  RowMatrix dense() const;
  /// M H (m x ell) for the right form, F M (k x n) for the left form.
  /// Reads 2^d columns (rows) of M per sampled line.
  Eigen::MatrixXd apply(MatrixOracle& m) const;
  /// F A for a left multiplier and a dense A with m rows.
  Eigen::MatrixXd apply_left_dense(const Eigen::MatrixXd& a) const;

 private:
  AbridgedSrht(bool left, Index dim, int d, Index count, RngStream& rng);

  bool left_;
  Index dim_;
  AbridgedHadamard hadamard_;
  std::vector<Index> samples_;
  std::vector<double> signs_;
  double scale_;
};

/// rows x cols matrix of i.i.d. standard normals, filled column by column.
Eigen::MatrixXd gaussian_multiplier(Index rows, Index cols, RngStream& rng);

/// Generalized Nystrom: X = M H, Y = pinv(F M H), Z = F M. The pseudo-inverse
/// drops singular values below 1e-12 * sigma_max; `rank` reports what survived.
SketchLRA nystrom_lra(MatrixOracle& m, const SketchConfig& cfg);

/// Optimal rank-r approximation from a full SVD (reference, not sublinear).
SketchLRA svd_truncate(const Eigen::MatrixXd& m, Index r);

/// X Y Z as a MatrixSource; products cost O((m + n) rank) and X Y Z is never formed.
class FactoredSource final : public MatrixSource {
 public:
  explicit FactoredSource(const SketchLRA& lra);

  Index rows() const noexcept override { return static_cast<Index>(x_.rows()); }
  Index cols() const noexcept override { return static_cast<Index>(w_.cols()); }
  double entry(Index i, Index j) const override { return x_.row(i).dot(w_.col(j)); }
  void read_column(Index j, std::span<double> out) const override;
  void read_row(Index i, std::span<double> out) const override;
  void apply(std::span<const double> x, std::span<double> y, bool transpose) const override;
  void combine(std::span<const Index> indices, std::span<const double> values, std::span<double> y,
               bool transpose) const override;
  std::string describe() const override { return "factored"; }

  /// ||X Y Z||_F from the Gram matrices of the factors.
  double frobenius_norm() const;

 private:
  Eigen::MatrixXd x_;
  Eigen::MatrixXd w_;  // Y Z
};

enum class NormKind { MaxAbs, One, Two, Inf, Frobenius };

struct LraNormReport {
  double estimate = 0.0;
  Index rank = 0;
  CostReport sketch_cost;  // reads of M while sketching
};

/// Estimate ||M||_p from a rank-r Nystrom approximation. One/Inf use the
/// classical estimator on the factored product, Two uses power iteration on
/// (XYZ)^T (XYZ), Frobenius is exact on the factors, MaxAbs runs maxvol1.
LraNormReport lra_norm_report(MatrixOracle& m, NormKind p, const SketchConfig& cfg);
double lra_norm_estimate(MatrixOracle& m, NormKind p, const SketchConfig& cfg);

/// Largest singular value by power iteration on A^T A.
double power_iteration_two_norm(MatrixOracle& a, RngStream& rng, int max_iterations = 30,
                                double rel_tol = 1e-6);

struct NormInterval {
  double lower;
  double upper;
};

/// Interval for ||M||_p implied by ||M||_2 = nu2. p >= 1 (including infinity)
/// needs a square matrix; p == 0 means the max-abs entry norm.
NormInterval norm_bounds_from_p2(double nu2, double p, Index m, Index n);

}  // namespace sfnorm
