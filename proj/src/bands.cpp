#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "sfnorm/bench.hpp"

namespace sfnorm {

namespace {

constexpr std::array<std::size_t, 3> kKs = {1, 3, 10};
constexpr std::array<Index, 4> kRanks = {8, 16, 32, 64};
constexpr double kInf = std::numeric_limits<double>::infinity();

// Reference means, rows in table_classes() order.
// Tables 1-2: [k index][alg21, alg22, alg32].
constexpr double kColumnTables[9][3][3] = {
    {{1.1296, 1.1407, 1.0000}, {1.0422, 1.0438, 1.0000}, {1.0239, 1.0276, 1.0000}},  // shaw
    {{1.0536, 1.0553, 1.0508}, {1.0300, 1.0270, 1.0282}, {1.0248, 1.0231, 1.0247}},  // gravity
    {{1.0013, 1.0013, 1.0012}, {1.0009, 1.0009, 1.0009}, {1.0003, 1.0003, 1.0004}},  // slp
    {{1.1610, 1.1622, 1.1446}, {1.1591, 1.1531, 1.1432}, {1.1592, 1.1647, 1.1417}},  // fast decay
    {{1.1540, 1.1533, 1.1478}, {1.1618, 1.1620, 1.1434}, {1.1596, 1.1682, 1.1484}},  // slow decay
    {{1.0000, 1.0000, 1.0000}, {1.0000, 1.0000, 1.0000}, {1.0000, 1.0000, 1.0000}},  // cauchy
    {{1.0222, 1.0224, 1.0218}, {1.0212, 1.0209, 1.0207}, {1.0206, 1.0206, 1.0201}},  // one small sv
    {{1.0000, 1.0000, 1.0000}, {1.0000, 1.0000, 1.0000}, {1.0000, 1.0000, 1.0000}},  // one large sv
    {{1.0644, 1.0645, 1.0642}, {1.0546, 1.0541, 1.0550}, {1.0526, 1.0526, 1.0518}},  // random
};

// Table 3: alg31, then alg31k at k = 1, 3, 10.
constexpr double kMaxvolTable[9][4] = {
    {1.0001, 1.0001, 1.0001, 1.0001}, {1.0000, 1.0000, 1.0000, 1.0000}, {1.0000, 1.0000, 1.0000, 1.0000},
    {1.3228, 1.2711, 1.2652, 1.2638}, {1.3197, 1.2644, 1.2639, 1.2663}, {1.0000, 1.0000, 1.0000, 1.0000},
    {1.3656, 1.3805, 1.3665, 1.3695}, {1.0000, 1.0000, 1.0000, 1.0000}, {1.0000, 1.0000, 1.0000, 1.0000},
};

// Table 4: [asrht, gaussian][r index].
constexpr double kLraTable[9][2][4] = {
    {{1.1379, 1.1594, 1.1589, 1.2168}, {1.0978, 1.1579, 1.2027, 1.2358}},
    {{1.4349, 1.4129, 1.3930, 1.3939}, {1.3019, 1.3453, 1.3765, 1.4042}},
    {{2.2551, 1.9168, 1.8366, 1.7104}, {1.4883, 1.5230, 1.5560, 1.5790}},
    {{0.9009, 1.2754, 1.3249, 1.3447}, {0.8895, 1.2723, 1.3278, 1.3719}},
    {{0.9262, 1.2745, 1.3266, 1.3668}, {0.9179, 1.2743, 1.3257, 1.3639}},
    {{1.8293, 1.5966, 1.3461, 1.0539}, {0.6896, 0.6567, 0.6313, 0.5967}},
    {{0.4277, 0.5088, 0.6060, 0.7114}, {0.4240, 0.5085, 0.6131, 0.7256}},
    {{1.4778, 1.4595, 1.4268, 1.4259}, {1.5100, 1.4657, 1.4298, 1.4254}},
    {{0.4683, 0.5618, 0.6682, 0.7961}, {0.4561, 0.5518, 0.6668, 0.8019}},
};

std::optional<std::size_t> row_of(MatrixClass cls) {
  const auto& classes = table_classes();
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == cls) return i;
  return std::nullopt;
}

template <typename Array, typename Value>
std::optional<std::size_t> index_in(const Array& a, Value v) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == v) return i;
  return std::nullopt;
}

JobSpec col_job(Algorithm alg, std::size_t k) {
  JobSpec j;
  j.alg = alg;
  j.k = k;
  return j;
}

JobSpec lra_job(Index r, SketchKind kind) {
  JobSpec j;
  j.alg = Algorithm::Alg41;
  j.k = 1;
  j.r = r;
  j.sketch = kind;
  return j;
}

JobSpec maxvol_job() {
  JobSpec j;
  j.alg = Algorithm::Alg31;
  j.k = 1;
  return j;
}

BandCheck band(const std::vector<ClassRun>& runs, MatrixClass cls, const JobSpec& job, double lo, double hi,
               std::string name) {
  BandCheck b;
  b.name = std::move(name);
  b.lo = lo;
  b.hi = hi;
  const auto mean = mean_ratio(runs, cls, job);
  if (!mean) {
    b.status = "SKIPPED";
    return b;
  }
  b.value = *mean;
  b.status = (b.value >= lo && b.value <= hi) ? "PASS" : "FAIL";
  return b;
}

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : "SKIPPED"; }

std::string delta_cell(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b) return "SKIPPED";
  const auto d = delta_err_pct(*a, *b);
  return d ? fmt::format("{:.2f}", *d) : "-";
}

}  // namespace

std::string_view to_string(Table t) noexcept {
  switch (t) {
    case Table::T1: return "T1";
    case Table::T2: return "T2";
    case Table::T3: return "T3";
    case Table::T4: return "T4";
  }
  return "?";
}

std::optional<Table> parse_table(std::string_view name) {
  for (Table t : {Table::T1, Table::T2, Table::T3, Table::T4})
    if (to_string(t) == name) return t;
  return std::nullopt;
}

const std::vector<MatrixClass>& table_classes() {
  static const std::vector<MatrixClass> classes = {
      MatrixClass::Shaw,       MatrixClass::Gravity,    MatrixClass::Slp,    MatrixClass::FastDecay, MatrixClass::SlowDecay,
      MatrixClass::Cauchy,     MatrixClass::OneSmallSv, MatrixClass::OneLargeSv, MatrixClass::Random,
  };
  return classes;
}

std::vector<JobSpec> table_jobs(Table t) {
  std::vector<JobSpec> jobs;
  switch (t) {
    case Table::T1:
      for (auto k : kKs) {
        jobs.push_back(col_job(Algorithm::Alg21, k));
        jobs.push_back(col_job(Algorithm::Alg22, k));
      }
      break;
    case Table::T2:
      for (auto k : kKs) {
        jobs.push_back(col_job(Algorithm::Alg21, k));
        jobs.push_back(col_job(Algorithm::Alg32, k));
      }
      break;
    case Table::T3:
      jobs.push_back(maxvol_job());
      for (auto k : kKs) jobs.push_back(col_job(Algorithm::Alg31k, k));
      break;
    case Table::T4:
      for (auto r : kRanks) {
        jobs.push_back(lra_job(r, SketchKind::AbridgedSrht));
        jobs.push_back(lra_job(r, SketchKind::Gaussian));
      }
      break;
  }
  return jobs;
}

std::optional<double> reference_value(Table t, MatrixClass cls, const JobSpec& job) {
  const auto row = row_of(cls);
  if (!row) return std::nullopt;
  switch (t) {
    case Table::T1:
    case Table::T2: {
      const auto ki = index_in(kKs, job.k);
      if (!ki) return std::nullopt;
      if (job.alg == Algorithm::Alg21) return kColumnTables[*row][*ki][0];
      if (job.alg == Algorithm::Alg22 && t == Table::T1) return kColumnTables[*row][*ki][1];
      if (job.alg == Algorithm::Alg32 && t == Table::T2) return kColumnTables[*row][*ki][2];
      return std::nullopt;
    }
    case Table::T3: {
      if (job.alg == Algorithm::Alg31) return kMaxvolTable[*row][0];
      const auto ki = index_in(kKs, job.k);
      if (job.alg == Algorithm::Alg31k && ki) return kMaxvolTable[*row][1 + *ki];
      return std::nullopt;
    }
    case Table::T4: {
      const auto ri = index_in(kRanks, job.r);
      if (job.alg != Algorithm::Alg41 || !ri) return std::nullopt;
      return kLraTable[*row][job.sketch == SketchKind::AbridgedSrht ? 0 : 1][*ri];
    }
  }
  return std::nullopt;
}

std::vector<BandCheck> evaluate_bands(Table t, const std::vector<ClassRun>& runs) {
  std::vector<BandCheck> out;
  auto name_of = [](MatrixClass c, const JobSpec& j) { return fmt::format("{} {}", to_string(c), j.label()); };
  switch (t) {
    case Table::T1:
      for (MatrixClass cls : table_classes()) {
        for (auto k : kKs) {
          for (Algorithm alg : {Algorithm::Alg21, Algorithm::Alg22}) {
            const auto job = col_job(alg, k);
            const double ref = *reference_value(t, cls, job);
            if (cls == MatrixClass::Cauchy || cls == MatrixClass::OneLargeSv)
              out.push_back(band(runs, cls, job, 1.0, 1.005, name_of(cls, job)));
            else
              out.push_back(band(runs, cls, job, ref - 0.03, ref + 0.03, name_of(cls, job)));
          }
        }
      }
      break;
    case Table::T2: {
      out.push_back(band(runs, MatrixClass::FastDecay, col_job(Algorithm::Alg32, 3), 1.11, 1.18,
                         name_of(MatrixClass::FastDecay, col_job(Algorithm::Alg32, 3))));
      for (auto k : kKs)
        out.push_back(band(runs, MatrixClass::Shaw, col_job(Algorithm::Alg32, k), 1.0, 1.001,
                           name_of(MatrixClass::Shaw, col_job(Algorithm::Alg32, k))));
      for (MatrixClass cls : {MatrixClass::FastDecay, MatrixClass::SlowDecay}) {
        for (auto k : kKs) {
          BandCheck b;
          b.name = fmt::format("{} k={} mean(alg32) - mean(alg21)", to_string(cls), k);
          b.lo = -kInf;
          b.hi = 0.0;
          const auto a21 = mean_ratio(runs, cls, col_job(Algorithm::Alg21, k));
          const auto a32 = mean_ratio(runs, cls, col_job(Algorithm::Alg32, k));
          if (!a21 || !a32) {
            b.status = "SKIPPED";
          } else {
            b.value = *a32 - *a21;
            b.status = b.value <= 0.0 ? "PASS" : "FAIL";
          }
          out.push_back(b);
        }
      }
      break;
    }
    case Table::T3:
      for (MatrixClass cls : {MatrixClass::Random, MatrixClass::Cauchy, MatrixClass::OneLargeSv, MatrixClass::Gravity}) {
        out.push_back(band(runs, cls, maxvol_job(), 1.0, 1.001, name_of(cls, maxvol_job())));
        for (auto k : kKs)
          out.push_back(band(runs, cls, col_job(Algorithm::Alg31k, k), 1.0, 1.001,
                             name_of(cls, col_job(Algorithm::Alg31k, k))));
      }
      out.push_back(band(runs, MatrixClass::FastDecay, maxvol_job(), 1.27, 1.38,
                         name_of(MatrixClass::FastDecay, maxvol_job())));
      out.push_back(band(runs, MatrixClass::FastDecay, col_job(Algorithm::Alg31k, 3), 1.22, 1.32,
                         name_of(MatrixClass::FastDecay, col_job(Algorithm::Alg31k, 3))));
      break;
    case Table::T4:
      for (MatrixClass cls : table_classes())
        for (const auto& job : table_jobs(Table::T4)) out.push_back(band(runs, cls, job, 0.35, 2.60, name_of(cls, job)));
      out.push_back(band(runs, MatrixClass::OneSmallSv, lra_job(8, SketchKind::Gaussian), 0.35, 0.50,
                         name_of(MatrixClass::OneSmallSv, lra_job(8, SketchKind::Gaussian)) + " (spot)"));
      for (SketchKind kind : {SketchKind::AbridgedSrht, SketchKind::Gaussian})
        out.push_back(band(runs, MatrixClass::OneLargeSv, lra_job(64, kind), 1.30, 1.55,
                           name_of(MatrixClass::OneLargeSv, lra_job(64, kind)) + " (spot)"));
      break;
  }
  return out;
}

std::string table_csv(Table t, const std::vector<ClassRun>& runs) {
  std::string out;
  auto mean = [&](MatrixClass cls, const JobSpec& job) { return mean_ratio(runs, cls, job); };
  switch (t) {
    case Table::T1:
    case Table::T2: {
      const Algorithm other = t == Table::T1 ? Algorithm::Alg22 : Algorithm::Alg32;
      const auto other_name = to_string(other);
      out = "class";
      for (auto k : kKs) out += fmt::format(",k{0}_alg21,k{0}_{1},k{0}_delta_err_pct", k, other_name);
      out += '\n';
      for (MatrixClass cls : table_classes()) {
        if (!find_run(runs, cls)) continue;
        out += to_string(cls);
        for (auto k : kKs) {
          const auto a = mean(cls, col_job(Algorithm::Alg21, k));
          const auto b = mean(cls, col_job(other, k));
          out += fmt::format(",{},{},{}", cell(a), cell(b), delta_cell(a, b));
        }
        out += '\n';
      }
      break;
    }
    case Table::T3: {
      out = "class,alg31";
      for (auto k : kKs) out += fmt::format(",k{0}_alg31k,k{0}_delta_err_pct", k);
      out += '\n';
      for (MatrixClass cls : table_classes()) {
        if (!find_run(runs, cls)) continue;
        const auto a = mean(cls, maxvol_job());
        out += fmt::format("{},{}", to_string(cls), cell(a));
        for (auto k : kKs) {
          const auto b = mean(cls, col_job(Algorithm::Alg31k, k));
          out += fmt::format(",{},{}", cell(b), delta_cell(a, b));
        }
        out += '\n';
      }
      break;
    }
    case Table::T4: {
      out = "class,multiplier";
      for (auto r : kRanks) out += fmt::format(",r{}", r);
      out += '\n';
      for (MatrixClass cls : table_classes()) {
        if (!find_run(runs, cls)) continue;
        for (SketchKind kind : {SketchKind::AbridgedSrht, SketchKind::Gaussian}) {
          out += fmt::format("{},{}", to_string(cls), kind == SketchKind::AbridgedSrht ? "3-asrht" : "gaussian");
          for (auto r : kRanks) out += "," + cell(mean(cls, lra_job(r, kind)));
          out += '\n';
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace sfnorm
