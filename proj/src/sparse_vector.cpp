#include "sfnorm/sparse_vector.hpp"

#include <cmath>

#include "sfnorm/errors.hpp"

namespace sfnorm {

SparseVector::SparseVector(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw ParameterError("SparseVector: dimension must be positive");
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    if (entries_[t].index >= dim_) throw ParameterError("SparseVector: index out of range");
    if (t > 0 && entries_[t].index <= entries_[t - 1].index)
      throw ParameterError("SparseVector: indices must be strictly increasing");
  }
}

SparseVector SparseVector::unit(std::size_t dim, std::size_t index, double value) {
  return SparseVector(dim, {{index, value}});
}

SparseVector SparseVector::from_dense(std::span<const double> v) {
  std::vector<SparseEntry> entries;
  entries.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) entries.push_back({i, v[i]});
  return SparseVector(v.size(), std::move(entries));
}

double SparseVector::one_norm() const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) s += std::abs(e.value);
  return s;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim_, 0.0);
  for (const auto& e : entries_) out[e.index] = e.value;
  return out;
}

SparseVector k_sparsify(std::span<const double> v, std::size_t k, RngStream& rng) {
  if (k == 0 || k > v.size()) throw ParameterError("k_sparsify: need 1 <= k <= n");
  const auto positions = sample_without_replacement(v.size(), k, rng);
  std::vector<SparseEntry> entries;
  entries.reserve(k);
  for (std::size_t p : positions) entries.push_back({p, v[p]});
  return SparseVector(v.size(), std::move(entries));
}

SparseVector normalize_one(const SparseVector& v) {
  const double norm = v.one_norm();
  if (!(norm > 0.0)) throw DegenerateVectorError("normalize_one: vector has zero 1-norm");
  std::vector<SparseEntry> entries(v.entries().begin(), v.entries().end());
  for (auto& e : entries) e.value /= norm;
  return SparseVector(v.dim(), std::move(entries));
}

std::vector<double> sign_vector(std::span<const double> u) {
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = sign_of(u[i]);
  return w;
}

}  // namespace sfnorm
