// Experiment runner: single runs, table reproduction, delta-matrix replay.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sfnorm/adversarial.hpp"
#include "sfnorm/bench.hpp"
#include "sfnorm/errors.hpp"
#include "sfnorm/matrix_io.hpp"

namespace fs = std::filesystem;
using namespace sfnorm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBandMiss = 2;
constexpr int kExitMissingInput = 3;
constexpr int kExitError = 1;

struct RunArgs {
  std::string cls = "fast-decay";
  std::string alg = "alg21";
  Index n = 1024;
  std::size_t k = 3;
  int tol_cap = 10;
  int ca_tol = 1;
  std::string alpha = "n-over-k";
  Index r = 8;
  std::string sketch = "gaussian";
  int trials = 200;
  std::uint64_t seed = 42;
  std::string out;
  std::string matrix;
  std::string data_dir;
  bool timing = false;
};

struct ReproduceArgs {
  std::string table = "all";
  int trials = 200;
  std::uint64_t seed = 42;
  Index n = 1024;
  std::string data_dir;
  std::string out_dir = ".";
};

struct AdversarialArgs {
  std::string alg = "alg21";
  std::size_t k = 3;
  Index n = 64;
  std::uint64_t seed = 42;
  Index r = 2;
};

SketchKind parse_sketch(const std::string& s) {
  if (s == "gaussian") return SketchKind::Gaussian;
  if (s == "asrht" || s == "3-asrht") return SketchKind::AbridgedSrht;
  throw ParameterError("unknown sketch '" + s + "' (gaussian, asrht)");
}

Algorithm require_alg(const std::string& s) {
  const auto alg = parse_algorithm(s);
  if (!alg) throw ParameterError("unknown algorithm '" + s + "'");
  return *alg;
}

int do_run(const RunArgs& a) {
  ExperimentConfig cfg;
  if (!a.matrix.empty()) {
    cfg.matrix_file = a.matrix;
  } else {
    const auto cls = parse_matrix_class(a.cls);
    if (!cls) throw ParameterError("unknown matrix class '" + a.cls + "'");
    cfg.cls = *cls;
  }
  if (!a.data_dir.empty()) cfg.data_dir = a.data_dir;
  cfg.job.alg = require_alg(a.alg);
  cfg.job.k = a.k;
  cfg.job.tol_cap = a.tol_cap;
  cfg.job.ca_tol = a.ca_tol;
  cfg.job.r = a.r;
  cfg.job.sketch = parse_sketch(a.sketch);
  if (a.alpha == "n-over-k") {
    cfg.job.alpha_mode = AlphaMode::NOverK;
  } else if (a.alpha == "search") {
    cfg.job.alpha_mode = AlphaMode::Search;
  } else {
    cfg.job.alpha_mode = AlphaMode::Fixed;
    try {
      cfg.job.alpha = std::stod(a.alpha);
    } catch (const std::exception&) {
      throw ParameterError("--alpha must be n-over-k, search, or a number");
    }
  }
  cfg.n = a.n;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.timing = a.timing;

  if (cfg.matrix_file && !fs::exists(*cfg.matrix_file)) {
    fmt::print(stderr, "missing input: {}\n", cfg.matrix_file->string());
    return kExitMissingInput;
  }
  if (is_file_class(cfg.cls) && !cfg.matrix_file) {
    if (!cfg.data_dir || !fs::exists(*cfg.data_dir / (std::string(to_string(cfg.cls)) + ".mtx"))) {
      fmt::print(stderr, "missing input: {}.mtx (set --data-dir or SFNORM_DATA_DIR)\n", to_string(cfg.cls));
      return kExitMissingInput;
    }
  }

  const auto records = run_experiment(cfg);
  const auto summary = summarize(records.front().cls, cfg.job, records);
  const auto csv = records_to_csv(records, summary);
  if (a.out.empty())
    fmt::print("{}", csv);
  else
    write_file_atomic(a.out, csv);
  fmt::print(stderr, "{} on {}: {} trials, mean ratio {:.4f}, median {:.4f}, min {:.4f}, max {:.4f}, mean gamma {:.2f}, mean entries read {:.0f}\n",
             cfg.job.label(), summary.cls, summary.trials, summary.mean_ratio, summary.median_ratio, summary.min_ratio,
             summary.max_ratio, summary.mean_gamma, summary.mean_entries_read);
  return kExitOk;
}

int do_reproduce(const ReproduceArgs& a) {
  std::vector<Table> tables;
  if (a.table == "all") {
    tables = {Table::T1, Table::T2, Table::T3, Table::T4};
  } else {
    const auto t = parse_table(a.table);
    if (!t) throw ParameterError("unknown table '" + a.table + "' (T1, T2, T3, T4, all)");
    tables = {*t};
  }

  std::set<JobSpec> job_set;
  for (Table t : tables)
    for (const auto& j : table_jobs(t)) job_set.insert(j);
  const std::vector<JobSpec> jobs(job_set.begin(), job_set.end());

  SuiteOptions opts;
  opts.n = a.n;
  opts.trials = a.trials;
  opts.seed = a.seed;
  if (!a.data_dir.empty()) opts.data_dir = a.data_dir;

  const fs::path out_dir(a.out_dir);
  fs::create_directories(out_dir);
  const auto runs = run_suite(table_classes(), jobs, opts);

  bool missing = false;
  bool band_miss = false;
  for (const auto& run : runs) {
    if (run.skipped) {
      missing = true;
      fmt::print("SKIPPED {}: {}\n", to_string(run.cls), run.skip_reason);
    }
  }

  for (Table t : tables) {
    write_file_atomic(out_dir / fmt::format("{}.csv", to_string(t)), table_csv(t, runs));

    std::string bands = "check,value,lo,hi,status\n";
    for (const auto& b : evaluate_bands(t, runs)) {
      bands += fmt::format("{},{},{},{},{}\n", b.name, b.status == "SKIPPED" ? "" : fmt::format("{:.4f}", b.value), b.lo,
                           b.hi, b.status);
      if (b.status == "FAIL") band_miss = true;
      fmt::print("{} {:<7} {:<44} {:>9} in [{}, {}]\n", to_string(t), b.status, b.name,
                 b.status == "SKIPPED" ? "-" : fmt::format("{:.4f}", b.value), b.lo, b.hi);
    }
    write_file_atomic(out_dir / fmt::format("{}_bands.csv", to_string(t)), bands);

    // Per-trial records double as figure data.
    std::string trials;
    bool header = true;
    for (const auto& run : runs) {
      if (run.skipped) continue;
      for (const auto& job : table_jobs(t)) {
        const auto& recs = run.records.at(job);
        auto csv = records_to_csv(recs, summarize(recs.front().cls, job, recs));
        if (!header) csv.erase(0, csv.find('\n') + 1);
        header = false;
        trials += csv;
      }
    }
    write_file_atomic(out_dir / fmt::format("{}_trials.csv", to_string(t)), trials);
  }

  if (band_miss) return kExitBandMiss;
  if (missing) return kExitMissingInput;
  return kExitOk;
}

int do_adversarial(const AdversarialArgs& a) {
  const auto alg = require_alg(a.alg);
  const auto res = adversarial_replay(alg, a.n, a.k, a.seed, 10, a.r);
  if (!res.delta) {
    fmt::print("{} read all {} entries of the zero matrix; no delta matrix defeats it\n", a.alg, a.n * a.n);
    return kExitOk;
  }
  fmt::print("{} k={} n={}: {} of {} entries never read on the zero matrix\n", a.alg, a.k, a.n, res.unread, a.n * a.n);
  fmt::print("  Delta_({},{}): output {} (exact 1), zero matrix: output {} (exact 0)\n", res.delta->first,
             res.delta->second, res.output_delta, res.output_zero);
  fmt::print("  identical outputs: {}, undetected error {}\n", res.same_output ? "yes" : "no", res.error);
  return res.falsified() ? kExitOk : kExitBandMiss;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sublinear matrix norm estimation benchmarks"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm on one matrix class");
  run_cmd->add_option("--class", run.cls, "fast-decay, slow-decay, one-small-sv, one-large-sv, cauchy, random, identity, shaw, gravity, slp");
  run_cmd->add_option("--alg", run.alg, "baseline, alg21, alg22, alg22a, alg31, alg31k, alg32, alg41, alpha-search");
  run_cmd->add_option("--n", run.n, "Matrix dimension");
  run_cmd->add_option("--k", run.k, "Sparsification size");
  run_cmd->add_option("--tol-cap", run.tol_cap, "Sweep cap TOL");
  run_cmd->add_option("--ca-tol", run.ca_tol, "Sweeps with cross-approximation (alg32)");
  run_cmd->add_option("--alpha", run.alpha, "n-over-k, search, or a value >= 1");
  run_cmd->add_option("--r", run.r, "LRA rank (alg41)");
  run_cmd->add_option("--sketch", run.sketch, "gaussian or asrht (alg41)");
  run_cmd->add_option("--trials", run.trials, "Number of trials");
  run_cmd->add_option("--seed", run.seed, "Base seed");
  run_cmd->add_option("--out", run.out, "CSV output path (stdout when omitted)");
  run_cmd->add_option("--matrix", run.matrix, "MatrixMarket or CSV file to use instead of a class");
  run_cmd->add_option("--data-dir", run.data_dir, "Directory holding shaw.mtx, gravity.mtx, slp.mtx")->envname("SFNORM_DATA_DIR");
  run_cmd->add_flag("--timing", run.timing, "Record wall time per trial (output is then not reproducible)");

  ReproduceArgs rep;
  auto* rep_cmd = app.add_subcommand("reproduce", "Reproduce the accuracy tables");
  rep_cmd->add_option("--table", rep.table, "T1, T2, T3, T4 or all");
  rep_cmd->add_option("--trials", rep.trials, "Trials per class");
  rep_cmd->add_option("--seed", rep.seed, "Base seed");
  rep_cmd->add_option("--n", rep.n, "Matrix dimension");
  rep_cmd->add_option("--data-dir", rep.data_dir, "Directory holding shaw.mtx, gravity.mtx, slp.mtx")->envname("SFNORM_DATA_DIR");
  rep_cmd->add_option("--out-dir", rep.out_dir, "Where to write the CSV files");

  AdversarialArgs adv;
  auto* adv_cmd = app.add_subcommand("adversarial", "Find a delta matrix the estimator cannot tell from zero");
  adv_cmd->add_option("--alg", adv.alg, "alg21, alg22, alg31, alg31k, alg32, alg41, alpha-search");
  adv_cmd->add_option("--k", adv.k, "Sparsification size");
  adv_cmd->add_option("--n", adv.n, "Matrix dimension");
  adv_cmd->add_option("--seed", adv.seed, "Seed");
  adv_cmd->add_option("--r", adv.r, "LRA rank (alg41)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return do_run(run);
    if (*rep_cmd) return do_reproduce(rep);
    if (*adv_cmd) return do_adversarial(adv);
  } catch (const IngestionError& e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return kExitMissingInput;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}
