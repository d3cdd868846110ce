// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <vector>

#include "sfnorm/kernels.hpp"
#include "sfnorm/rng.hpp"

namespace k = sfnorm::kernels;

namespace {

struct Fixture {
  std::size_t n;
  std::vector<double> a, x, y;
  std::vector<std::size_t> idx;
  std::vector<double> vals;

  explicit Fixture(std::size_t size) : n(size), a(size * size), x(size), y(size) {
    sfnorm::RngStream rng(7);
    for (auto& v : a) v = rng.normal();
    for (auto& v : x) v = rng.normal();
    for (std::size_t t = 0; t < 10; ++t) {
      idx.push_back(rng.uniform_index(size));
      vals.push_back(rng.normal());
    }
  }
};

template <auto Fn>
void bm_column_abs_sums(benchmark::State& st) {
  Fixture f(st.range(0));
  for (auto _ : st) {
    Fn(f.a, f.n, f.n, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
  st.SetBytesProcessed(st.iterations() * f.a.size() * sizeof(double));
}

template <auto Fn>
void bm_max_abs(benchmark::State& st) {
  Fixture f(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(f.a));
  st.SetBytesProcessed(st.iterations() * f.a.size() * sizeof(double));
}

template <auto Fn>
void bm_gemv(benchmark::State& st) {
  Fixture f(st.range(0));
  for (auto _ : st) {
    Fn(f.a, f.n, f.n, f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
  st.SetBytesProcessed(st.iterations() * f.a.size() * sizeof(double));
}

template <auto Fn>
void bm_combine(benchmark::State& st) {
  Fixture f(st.range(0));
  for (auto _ : st) {
    Fn(f.a, f.n, f.n, f.idx, f.vals, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

}  // namespace

#define SFNORM_PAIR(bm, fn)                                                        \
  BENCHMARK_TEMPLATE(bm, k::serial::fn)->Name("serial/" #fn)->RangeMultiplier(4)->Range(256, 4096); \
  BENCHMARK_TEMPLATE(bm, k::omp::fn)->Name("omp/" #fn)->RangeMultiplier(4)->Range(256, 4096)

SFNORM_PAIR(bm_column_abs_sums, column_abs_sums);
SFNORM_PAIR(bm_max_abs, max_abs);
SFNORM_PAIR(bm_gemv, gemv);
SFNORM_PAIR(bm_gemv, gemv_t);
SFNORM_PAIR(bm_combine, combine_columns);
SFNORM_PAIR(bm_combine, combine_rows);

BENCHMARK_MAIN();
