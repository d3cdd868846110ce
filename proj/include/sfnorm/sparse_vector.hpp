#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sfnorm/rng.hpp"

namespace sfnorm {

struct SparseEntry {
  std::size_t index;
  double value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Vector of dimension `dim` with explicitly stored (index, value) pairs.
/// Indices are strictly increasing and below `dim`; a stored value may be zero.
class SparseVector {
 public:
  SparseVector(std::size_t dim, std::vector<SparseEntry> entries);

  static SparseVector unit(std::size_t dim, std::size_t index, double value = 1.0);
  /// Every coordinate stored.
  static SparseVector from_dense(std::span<const double> v);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const SparseEntry> entries() const noexcept { return entries_; }
  double one_norm() const noexcept;
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dim_;
  std::vector<SparseEntry> entries_;
};

/// Keep v at k positions drawn uniformly without replacement; the rest are
/// implicitly zero. Exactly k entries are stored even if some selected
/// coordinates of v are zero.
SparseVector k_sparsify(std::span<const double> v, std::size_t k, RngStream& rng);

/// v / ||v||_1. Throws DegenerateVectorError when ||v||_1 == 0.
SparseVector normalize_one(const SparseVector& v);

/// sign(0) is +1.
inline double sign_of(double x) noexcept { return x >= 0.0 ? 1.0 : -1.0; }
std::vector<double> sign_vector(std::span<const double> u);

}  // namespace sfnorm
