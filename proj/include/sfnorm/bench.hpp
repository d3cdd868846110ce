#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfnorm/matrixgen.hpp"
#include "sfnorm/sketch.hpp"

namespace sfnorm {

enum class Algorithm { Baseline, Alg21, Alg22, Alg22a, Alg31, Alg31k, Alg32, Alg41, AlphaSearch };

std::string_view to_string(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name);
/// Algorithms whose estimate is an exact column norm (ratio >= 1 always).
bool is_column_norm_algorithm(Algorithm a) noexcept;
/// Algorithms scored against |M| (max-abs entry) rather than ||M||_1.
bool is_max_abs_algorithm(Algorithm a) noexcept;

enum class AlphaMode { Fixed, NOverK, Search };

/// One estimator configuration applied to each matrix instance.
struct JobSpec {
  Algorithm alg = Algorithm::Alg21;
  std::size_t k = 3;
  int tol_cap = 10;
  int ca_tol = 1;
  AlphaMode alpha_mode = AlphaMode::NOverK;
  double alpha = 1.0;  // FIXED mode only
  Index r = 8;
  SketchKind sketch = SketchKind::Gaussian;

  std::string label() const;
  auto operator<=>(const JobSpec&) const = default;
};

struct ExperimentConfig {
  MatrixClass cls = MatrixClass::FastDecay;
  std::optional<std::filesystem::path> matrix_file;  // overrides cls
  std::optional<std::filesystem::path> data_dir;     // for shaw / gravity / slp
  JobSpec job;
  Index n = 1024;
  int trials = 200;
  std::uint64_t seed = 42;
  bool timing = false;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;  // matrix instance seed
  std::string cls;
  std::string alg;
  Index n = 0;
  std::size_t k = 0;
  int tol_cap = 0;
  int ca_tol = 0;
  double alpha = 0.0;
  Index r = 0;
  double estimate = 0.0;
  double exact = 0.0;
  double ratio = 0.0;
  int gamma = 0;
  std::uint64_t entries_read = 0;
  std::uint64_t flops = 0;
  double wall_ms = 0.0;
};

struct RunSummary {
  std::string cls;
  JobSpec job;
  std::size_t trials = 0;
  double mean_ratio = 0.0;
  double median_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_gamma = 0.0;
  double mean_entries_read = 0.0;
};

RunSummary summarize(const std::string& cls, const JobSpec& job, const std::vector<TrialRecord>& records);

/// CSV with one row per trial followed by SUMMARY:mean/median/min/max rows.
std::string records_to_csv(const std::vector<TrialRecord>& records, const RunSummary& summary);

/// Seeds shared by `run` and `reproduce`, so both see the same instances.
std::uint64_t matrix_seed(std::uint64_t base, MatrixClass cls, int trial);
RngStream job_stream(std::uint64_t base, MatrixClass cls, int trial, const JobSpec& job);

/// Runs one algorithm over `trials` fresh instances. Throws when a
/// column-norm algorithm reports ratio < 1.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

struct SuiteOptions {
  Index n = 1024;
  int trials = 200;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> data_dir;
  bool timing = false;
};

struct ClassRun {
  MatrixClass cls;
  bool skipped = false;
  std::string skip_reason;
  std::map<JobSpec, std::vector<TrialRecord>> records;
};

/// Runs every job on every instance of every class. Each instance is
/// generated once and shared by all jobs.
std::vector<ClassRun> run_suite(const std::vector<MatrixClass>& classes, const std::vector<JobSpec>& jobs,
                                const SuiteOptions& opts);

/// 100 (err_a - err_b) / err_a with err = mean - 1, or nullopt when err_a
/// rounds to zero at four decimals.
std::optional<double> delta_err_pct(double mean_a, double mean_b);
/// Same, as table text ("-" for nullopt, two decimals otherwise). Throws on
/// mismatched class or k.
std::string compare_runs(const RunSummary& a, const RunSummary& b);

enum class Table { T1, T2, T3, T4 };
std::string_view to_string(Table t) noexcept;
std::optional<Table> parse_table(std::string_view name);

/// Jobs needed to fill a table at the published parameters.
std::vector<JobSpec> table_jobs(Table t);
/// Row classes of a table, real-world rows first.
const std::vector<MatrixClass>& table_classes();

struct BandCheck {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::string status;  // PASS, FAIL or SKIPPED
};

/// Published mean for a table cell, if one exists.
std::optional<double> reference_value(Table t, MatrixClass cls, const JobSpec& job);
/// Acceptance bands attached to a table.
std::vector<BandCheck> evaluate_bands(Table t, const std::vector<ClassRun>& runs);

/// Wide CSV in the published table layout.
std::string table_csv(Table t, const std::vector<ClassRun>& runs);

const ClassRun* find_run(const std::vector<ClassRun>& runs, MatrixClass cls);
/// Mean ratio of a job on a class; nullopt when skipped or absent.
std::optional<double> mean_ratio(const std::vector<ClassRun>& runs, MatrixClass cls, const JobSpec& job);

}  // namespace sfnorm
