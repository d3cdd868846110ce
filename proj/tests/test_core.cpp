#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sfnorm/errors.hpp"
#include "sfnorm/kernels.hpp"
#include "sfnorm/matrixgen.hpp"
#include "sfnorm/oracle.hpp"
#include "sfnorm/rng.hpp"
#include "sfnorm/sparse_vector.hpp"

using namespace sfnorm;

namespace {

RowMatrix random_dense(Index m, Index n, RngStream& rng) {
  RowMatrix a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  return a;
}

}  // namespace

TEST_CASE("rng streams are reproducible and substreams independent of draw order") {
  RngStream a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c(7);
  const auto s3 = c.substream(3).next_u64();
  for (int i = 0; i < 50; ++i) c.next_u64();
  CHECK(c.substream(3).next_u64() == s3);
  CHECK(RngStream(7).substream(3).seed() != RngStream(7).substream(4).seed());
}

TEST_CASE("uniform draws stay in range") {
  RngStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(rng.uniform_index(7) < 7u);
  }
  CHECK_THROWS_AS(rng.uniform_index(0), ParameterError);
}

TEST_CASE("sample_without_replacement returns k sorted distinct indices") {
  RngStream rng(2);
  for (std::size_t k : {0u, 1u, 5u, 64u}) {
    const auto s = sample_without_replacement(64, k, rng);
    REQUIRE(s.size() == k);
    for (std::size_t t = 1; t < s.size(); ++t) CHECK(s[t - 1] < s[t]);
    for (auto i : s) CHECK(i < 64u);
  }
  CHECK_THROWS_AS(sample_without_replacement(3, 4, rng), ParameterError);
}

TEST_CASE("k_sparsify") {
  RngStream rng(3);

  SUBCASE("k = n keeps everything") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto s = k_sparsify(v, 4, rng);
    CHECK(s.to_dense() == v);
  }
  SUBCASE("symmetric values") {
    const std::vector<double> v{5, 5, 5, 5};
    const auto s = k_sparsify(v, 2, rng);
    CHECK(s.size() == 2);
    for (const auto& e : s.entries()) CHECK(e.value == 5.0);
    CHECK(s.one_norm() == 10.0);
  }
  SUBCASE("zero coordinates are still stored") {
    const std::vector<double> v(10, 0.0);
    CHECK(k_sparsify(v, 3, rng).size() == 3);
  }
  SUBCASE("bad k") {
    const std::vector<double> v{1, 2};
    CHECK_THROWS_AS(k_sparsify(v, 0, rng), ParameterError);
    CHECK_THROWS_AS(k_sparsify(v, 3, rng), ParameterError);
  }
  SUBCASE("position is uniform (Monte Carlo)") {
    std::vector<double> v(1024, 0.0);
    v[0] = 1.0;
    const int seeds = 10000;
    int hits = 0;
    for (int s = 0; s < seeds; ++s) {
      RngStream r(1000 + s);
      if (k_sparsify(v, 1, r).one_norm() == 1.0) ++hits;
    }
    const double p = 1.0 / 1024.0;
    const double sigma = std::sqrt(p * (1 - p) / seeds);
    CHECK(std::abs(hits / double(seeds) - p) <= 3 * sigma);
  }
  SUBCASE("structure invariants") {
    std::vector<double> v(100);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(i) - 50;
    for (int rep = 0; rep < 50; ++rep) {
      const auto s = k_sparsify(v, 7, rng);
      REQUIRE(s.size() == 7);
      for (std::size_t t = 0; t < s.size(); ++t) {
        CHECK(s.entries()[t].index < 100u);
        CHECK(s.entries()[t].value == v[s.entries()[t].index]);
        if (t) CHECK(s.entries()[t - 1].index < s.entries()[t].index);
      }
    }
  }
}

TEST_CASE("normalize_one") {
  CHECK(normalize_one(SparseVector(4, {{0, 2}, {3, -2}})) == SparseVector(4, {{0, 0.5}, {3, -0.5}}));
  CHECK(normalize_one(SparseVector(2, {{1, 1}})) == SparseVector(2, {{1, 1}}));
  CHECK(normalize_one(SparseVector(2, {{0, 3}, {1, 1}})) == SparseVector(2, {{0, 0.75}, {1, 0.25}}));
  CHECK_THROWS_AS(normalize_one(SparseVector(3, {{0, 0.0}})), DegenerateVectorError);

  RngStream rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> v(50);
    for (auto& x : v) x = rng.normal();
    const auto n = normalize_one(k_sparsify(v, 9, rng));
    CHECK(std::abs(n.one_norm() - 1.0) <= 4 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("sign_vector uses sign(0) = +1") {
  CHECK(sign_vector(std::vector<double>{3, -0.5, 0}) == std::vector<double>{1, -1, 1});
  CHECK(sign_vector(std::vector<double>{-1, -2}) == std::vector<double>{-1, -1});
  CHECK(sign_vector(std::vector<double>(5, 0.0)) == std::vector<double>(5, 1.0));
}

TEST_CASE("sparse_matvec values and counters") {
  auto id = gen_identity(3);
  CHECK(id.sparse_matvec(SparseVector::unit(3, 1, 7)) == std::vector<double>{0, 7, 0});
  CHECK(id.cost().entries_read == 3);

  auto m = MatrixOracle::from_rows({{1, -2}, {3, 4}});
  const SparseVector ones(2, {{0, 1}, {1, 1}});
  CHECK(m.sparse_matvec(ones) == std::vector<double>{-1, 7});
  CHECK(m.sparse_matvec(ones, true) == std::vector<double>{4, 2});
  CHECK_THROWS_AS(m.sparse_matvec(SparseVector::unit(3, 0)), ParameterError);
}

TEST_CASE("sparse_matvec matches dense product on random instances") {
  RngStream rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto m = MatrixOracle::dense(random_dense(16, 16, rng));
    std::vector<double> v(16);
    for (auto& x : v) x = rng.normal();
    const auto s = k_sparsify(v, 1 + rep % 16, rng);
    const auto dense = s.to_dense();
    for (bool t : {false, true}) {
      const auto a = m.sparse_matvec(s, t);
      const auto b = m.matvec(dense, t);
      for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) <= std::abs(b[i]) * 2 * std::numeric_limits<double>::epsilon() + 1e-15);
    }
  }
}

TEST_CASE("counter arithmetic replays a logged call sequence") {
  RngStream rng(6);
  auto m = MatrixOracle::dense(random_dense(5, 7, rng));
  std::uint64_t expected = 0;
  m.entry(0, 0);
  expected += 1;
  m.column(3);
  expected += 5;
  m.row(2);
  expected += 7;
  m.sparse_matvec(SparseVector(7, {{1, 1}, {4, 2}}));
  expected += 2 * 5;
  m.sparse_matvec(SparseVector(5, {{0, 1}, {1, 1}, {2, 1}}), true);
  expected += 3 * 7;
  m.matvec(std::vector<double>(7, 1.0));
  expected += 35;
  CHECK(m.cost().entries_read == expected);
  CHECK(m.fresh_handle().cost().entries_read == 0);
}

TEST_CASE("exact norms") {
  auto m = MatrixOracle::from_rows({{1, -2}, {3, 4}});
  CHECK(exact_one_norm(m) == 6.0);
  CHECK(exact_inf_norm(m) == 7.0);
  auto t = m.transposed();
  CHECK(exact_one_norm(t) == exact_inf_norm(m));
  auto id = gen_identity(9);
  CHECK(exact_one_norm(id) == 1.0);
  auto d = gen_delta(6, 5, 2, 4);
  CHECK(exact_one_norm(d) == 1.0);
  auto z = gen_zero(6, 5);
  CHECK(exact_one_norm(z) == 0.0);
}

TEST_CASE("non-finite entries are rejected") {
  RowMatrix a(1, 2);
  a << 1.0, std::nan("");
  CHECK_THROWS_AS(MatrixOracle::dense(a), ParameterError);
}

TEST_CASE("argmax_abs breaks ties at the lowest index") {
  CHECK(argmax_abs(std::vector<double>{1, -3, 3, 2}) == 1u);
  CHECK(argmax_abs(std::vector<double>{0, 0}) == 0u);
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  RngStream rng(8);
  for (auto [m, n] : {std::pair<Index, Index>{1, 1}, {3, 17}, {64, 33}, {257, 129}}) {
    const RowMatrix a = random_dense(m, n, rng);
    const std::span<const double> flat(a.data(), a.size());

    std::vector<double> s1(n), s2(n);
    kernels::serial::column_abs_sums(flat, m, n, s1);
    kernels::omp::column_abs_sums(flat, m, n, s2);
    CHECK(s1 == s2);
    CHECK(kernels::serial::max_abs(flat) == kernels::omp::max_abs(flat));

    std::vector<double> x(n), xt(m);
    for (auto& v : x) v = rng.normal();
    for (auto& v : xt) v = rng.normal();
    std::vector<double> y1(m), y2(m), z1(n), z2(n);
    kernels::serial::gemv(flat, m, n, x, y1);
    kernels::omp::gemv(flat, m, n, x, y2);
    CHECK(y1 == y2);
    kernels::serial::gemv_t(flat, m, n, xt, z1);
    kernels::omp::gemv_t(flat, m, n, xt, z2);
    CHECK(z1 == z2);

    const std::vector<std::size_t> cols{0, n - 1};
    const std::vector<std::size_t> rows{m - 1, 0};
    const std::vector<double> vals{0.5, -2.0};
    kernels::serial::combine_columns(flat, m, n, cols, vals, y1);
    kernels::omp::combine_columns(flat, m, n, cols, vals, y2);
    CHECK(y1 == y2);
    kernels::serial::combine_rows(flat, m, n, rows, vals, z1);
    kernels::omp::combine_rows(flat, m, n, rows, vals, z2);
    CHECK(z1 == z2);
  }
}

TEST_CASE("access log marks exactly the touched entries") {
  auto m = gen_zero(4, 4);
  m.enable_access_log();
  m.column(1);
  m.entry(3, 3);
  std::set<std::pair<Index, Index>> seen;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (m.access_log()[i * 4 + j]) seen.insert({i, j});
  CHECK(seen == std::set<std::pair<Index, Index>>{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 3}});
}
