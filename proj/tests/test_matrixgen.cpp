#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sfnorm/errors.hpp"
#include "sfnorm/matrix_io.hpp"
#include "sfnorm/matrixgen.hpp"
#include "sfnorm/maxvol.hpp"

using namespace sfnorm;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sfnorm_test_" + name);
}

}  // namespace

TEST_CASE("spectrum rules") {
  RngStream rng(1);
  const auto fast = spectrum_sigma(MatrixClass::FastDecay, 1024, rng);
  CHECK(fast[0] == 1.0);
  CHECK(fast[19] == 1.0);
  CHECK(fast[20] == 0.5);
  CHECK(fast[99] == std::ldexp(1.0, -80));
  CHECK(fast[100] == 0.0);
  CHECK(fast[1023] == 0.0);

  const auto slow = spectrum_sigma(MatrixClass::SlowDecay, 1024, rng);
  CHECK(slow[19] == 1.0);
  CHECK(slow[20] == 0.25);
  CHECK(slow[21] == 1.0 / 9.0);

  for (int rep = 0; rep < 100; ++rep) {
    const auto small = spectrum_sigma(MatrixClass::OneSmallSv, 64, rng);
    CHECK(small[63] >= 1e-16);
    CHECK(small[63] <= 1e-3);
    CHECK(small[0] == 1.0);
    const auto large = spectrum_sigma(MatrixClass::OneLargeSv, 64, rng);
    CHECK(large[0] >= 1e3);
    CHECK(large[0] <= 1e16);
    CHECK(large[1] == 1.0);
  }
  for (auto cls : {MatrixClass::FastDecay, MatrixClass::SlowDecay, MatrixClass::OneSmallSv,
                   MatrixClass::OneLargeSv}) {
    const auto s = spectrum_sigma(cls, 200, rng);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1]);
  }
  CHECK_THROWS_AS(spectrum_sigma(MatrixClass::Cauchy, 10, rng), ParameterError);
}

TEST_CASE("Haar factors are orthonormal") {
  RngStream rng(2);
  const Eigen::MatrixXd q = haar_orthogonal(200, 50, rng);
  const Eigen::MatrixXd gram = q.transpose() * q;
  CHECK((gram - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Haar first column is direction-uniform") {
  // For a uniform unit vector q in R^n: E[q_1] = 0, E[q_1^2] = 1/n.
  const Index n = 16;
  const int reps = 4000;
  double s1 = 0.0, s2 = 0.0;
  std::vector<double> second(reps);
  for (int t = 0; t < reps; ++t) {
    RngStream rng(1000 + t);
    const Eigen::MatrixXd q = haar_orthogonal(n, 1, rng);
    s1 += q(0, 0);
    s2 += q(0, 0) * q(0, 0);
  }
  const double m1 = s1 / reps, m2 = s2 / reps;
  // Var(q_1) = 1/n; Var(q_1^2) = 3/(n(n+2)) - 1/n^2.
  const double sd1 = std::sqrt(1.0 / n / reps);
  const double sd2 = std::sqrt((3.0 / (n * (n + 2.0)) - 1.0 / (n * n)) / reps);
  CHECK(std::abs(m1) <= 3 * sd1);
  CHECK(std::abs(m2 - 1.0 / n) <= 3 * sd2);
}

TEST_CASE("generated spectra match the prescribed singular values") {
  for (auto cls : {MatrixClass::FastDecay, MatrixClass::SlowDecay, MatrixClass::OneSmallSv,
                   MatrixClass::OneLargeSv}) {
    CAPTURE(to_string(cls));
    const auto sm = gen_spectrum_dense({128, cls, 77});
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(sm.data));
    const auto& got = svd.singularValues();
    // Backward-stable SVD: small singular values carry an absolute error of
    // order eps * sigma_1, large ones are accurate relatively.
    for (std::size_t i = 0; i < sm.sigma.size(); ++i) {
      const double want = sm.sigma[i];
      CHECK(std::abs(got(i) - want) <= 1e-10 * want + 1e-12 * sm.sigma[0]);
    }
  }
}

TEST_CASE("generators are reproducible") {
  for (auto cls : synthetic_classes()) {
    auto a = generate(cls, 64, 5);
    auto b = generate(cls, 64, 5);
    auto c = generate(cls, 64, 6);
    CHECK(materialize(a.source()) == materialize(b.source()));
    CHECK(materialize(a.source()) != materialize(c.source()));
  }
}

TEST_CASE("Cauchy") {
  CauchySpec spec;
  spec.n = 256;
  spec.seed = 3;
  CauchySource src(spec);
  double min_gap = INFINITY;
  for (double x : src.x())
    for (double y : src.y()) min_gap = std::min(min_gap, std::abs(x - y));
  for (Index i = 0; i < 256; ++i)
    for (Index j = 0; j < 256; ++j) {
      const double e = src.entry(i, j);
      CHECK(e < 0.0);
      CHECK(std::abs(e) <= 1.0 / min_gap);
      CHECK(e == src.entry(i, j));
    }
  CauchySpec bad = spec;
  bad.b = 150;
  CHECK_THROWS_AS(CauchySource{bad}, ParameterError);
}

TEST_CASE("random -1/0/1 class") {
  RngStream rng(4);
  auto m = gen_random_pm1(1024, rng);
  const RowMatrix a = materialize(m.source());
  const double total = 1024.0 * 1024.0;
  for (double sym : {-1.0, 0.0, 1.0}) {
    const double freq = (a.array() == sym).count() / total;
    CHECK(std::abs(freq - 1.0 / 3.0) <= 0.002);
  }
  auto h = m.fresh_handle();
  CHECK(exact_max_abs(h) == 1.0);
  auto h2 = m.fresh_handle();
  const double one = exact_one_norm(h2);
  // Column sums ~ Binomial(1024, 2/3): mean 682.7, sd 15; the max of 1024 sits a few sd up.
  CHECK(one >= 2.0 / 3.0 * 1024);
  CHECK(one <= 2.0 / 3.0 * 1024 + 6 * std::sqrt(1024.0 * 2 / 9));
  CHECK(m.entry(17, 900) == m.entry(17, 900));
}

TEST_CASE("delta family") {
  auto d = gen_delta(7, 5, 3, 2);
  auto z = gen_zero(7, 5);
  CHECK(exact_one_norm(d) == 1.0);
  CHECK(exact_one_norm(z) == 0.0);
  CHECK(materialize(d.source()) - materialize(d.source()) == materialize(z.source()));
  CHECK(d.entry(3, 2) == 1.0);
  CHECK_THROWS_AS(gen_delta(7, 5, 7, 0), ParameterError);
}

TEST_CASE("padding") {
  RngStream rng(5);
  RowMatrix a(100, 100);
  for (Index i = 0; i < 100; ++i)
    for (Index j = 0; j < 100; ++j) a(i, j) = rng.normal();
  auto m = MatrixOracle::dense(a);
  auto p = pad_to(m, 128, 128);
  CHECK(p.rows() == 128u);
  auto h = m.fresh_handle();
  CHECK(exact_one_norm(p) == exact_one_norm(h));
  auto p2 = pad_to(m, 128, 128);
  auto h2 = m.fresh_handle();
  CHECK(exact_max_abs(p2) == exact_max_abs(h2));

  auto same = pad_to(m, 100, 100);
  CHECK(materialize(same.source()) == a);
  CHECK_THROWS_AS(pad_to(m, 99, 100), ParameterError);

  auto p3 = pad_to(m, 128, 128);
  p3.entry(120, 120);
  p3.column(127);
  CHECK(p3.cost().entries_read == 1u + 128u);
  CHECK(p3.entry(120, 3) == 0.0);
}

TEST_CASE("MatrixMarket and CSV") {
  SUBCASE("2x2 column-major") {
    const RowMatrix m = parse_matrix_market(
        "%%MatrixMarket matrix array real general\n% comment\n2 2\n1\n3\n-2\n4\n");
    RowMatrix expect(2, 2);
    expect << 1, -2, 3, 4;
    CHECK(m == expect);
  }
  SUBCASE("round trips are bit exact") {
    RngStream rng(6);
    RowMatrix a(7, 5);
    for (Index i = 0; i < 7; ++i)
      for (Index j = 0; j < 5; ++j) a(i, j) = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
    CHECK(parse_matrix_market(format_matrix_market(a)) == a);
    CHECK(parse_csv_matrix(format_csv_matrix(a)) == a);

    const auto path = temp_path("rt.mtx");
    export_matrix(path, a);
    const auto in = ingest_matrix(path);
    CHECK(in.data == a);
    CHECK(in.provenance.size() == 16);
    const auto csv = temp_path("rt.csv");
    export_matrix(csv, a);
    CHECK(ingest_matrix(csv).data == a);
    std::filesystem::remove(path);
    std::filesystem::remove(csv);
  }
  SUBCASE("errors carry line and column") {
    try {
      parse_matrix_market("%%MatrixMarket matrix array real general\n2 1\n1\nabc\n");
      FAIL("expected an ingestion error");
    } catch (const IngestionError& e) {
      CHECK(e.line() == 4u);
      CHECK(e.column() >= 1u);
    }
    CHECK_THROWS_AS(parse_matrix_market("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n"),
                    IngestionError);
    CHECK_THROWS_AS(parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\nnan\n"), IngestionError);
    CHECK_THROWS_AS(parse_csv_matrix("2,2\n1,2\n3\n"), IngestionError);
    CHECK_THROWS_AS(ingest_matrix(temp_path("does_not_exist.mtx")), IngestionError);
  }
  SUBCASE("ingest then pad to the benchmark size") {
    RngStream rng(7);
    RowMatrix a(40, 40);
    for (Index i = 0; i < 40; ++i)
      for (Index j = 0; j < 40; ++j) a(i, j) = rng.normal();
    const auto path = temp_path("pad.mtx");
    export_matrix(path, a);
    auto m = pad_to(ingest_oracle(path), 64, 64);
    auto ref = MatrixOracle::dense(a);
    CHECK(exact_one_norm(m) == exact_one_norm(ref));
    std::filesystem::remove(path);
  }
}

TEST_CASE("class names") {
  for (auto cls : {MatrixClass::FastDecay, MatrixClass::SlowDecay, MatrixClass::OneSmallSv,
                   MatrixClass::OneLargeSv, MatrixClass::Cauchy, MatrixClass::Random, MatrixClass::Identity,
                   MatrixClass::Shaw, MatrixClass::Gravity, MatrixClass::Slp})
    CHECK(parse_matrix_class(to_string(cls)) == cls);
  CHECK_FALSE(parse_matrix_class("nope").has_value());
  CHECK(is_file_class(MatrixClass::Shaw));
  CHECK_FALSE(is_file_class(MatrixClass::Random));
}
