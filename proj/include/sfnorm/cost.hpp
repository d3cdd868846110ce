#pragma once

#include <cstdint>
#include <limits>

namespace sfnorm {

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

/// Work performed against one matrix handle.
struct CostReport {
  std::uint64_t entries_read = 0;
  std::uint64_t flops = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t sign_evals = 0;

  CostReport& operator+=(const CostReport& o) noexcept {
    entries_read = saturating_add(entries_read, o.entries_read);
    flops = saturating_add(flops, o.flops);
    comparisons = saturating_add(comparisons, o.comparisons);
    sign_evals = saturating_add(sign_evals, o.sign_evals);
    return *this;
  }

  friend CostReport operator+(CostReport a, const CostReport& b) noexcept { return a += b; }
  friend bool operator==(const CostReport&, const CostReport&) = default;
};

}  // namespace sfnorm

namespace sfnorm {

/// Work done between two snapshots of the same monotone counters.
inline CostReport cost_since(const CostReport& before, const CostReport& after) noexcept {
  return {after.entries_read - before.entries_read, after.flops - before.flops,
          after.comparisons - before.comparisons, after.sign_evals - before.sign_evals};
}

}  // namespace sfnorm
