#include "sfnorm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "sfnorm/alpha_search.hpp"
#include "sfnorm/errors.hpp"
#include "sfnorm/estimators.hpp"
#include "sfnorm/matrix_io.hpp"
#include "sfnorm/maxvol.hpp"

namespace sfnorm {

namespace {

struct AlgName {
  Algorithm alg;
  std::string_view name;
};

constexpr AlgName kAlgNames[] = {
    {Algorithm::Baseline, "baseline"}, {Algorithm::Alg21, "alg21"},   {Algorithm::Alg22, "alg22"},
    {Algorithm::Alg22a, "alg22a"},     {Algorithm::Alg31, "alg31"},   {Algorithm::Alg31k, "alg31k"},
    {Algorithm::Alg32, "alg32"},       {Algorithm::Alg41, "alg41"},   {Algorithm::AlphaSearch, "alpha-search"},
};

bool uses_k(Algorithm a) { return a != Algorithm::Baseline && a != Algorithm::Alg31 && a != Algorithm::Alg41; }
bool uses_alpha(Algorithm a) {
  return a == Algorithm::Alg22 || a == Algorithm::Alg22a || a == Algorithm::AlphaSearch;
}

// Streams are keyed by estimator family rather than by algorithm, so the
// Alg 2.x variants and the baseline at a given k see the same draws and their
// comparisons are paired.
std::uint64_t job_key(const JobSpec& job) {
  std::uint64_t family = 0;
  if (job.alg == Algorithm::Alg31) family = 1;
  if (job.alg == Algorithm::Alg41) family = 2;
  std::uint64_t key = hash_counter(family, job.k);
  key = hash_counter(key, job.alg == Algorithm::Alg41 ? job.r : 0);
  key = hash_counter(key, job.alg == Algorithm::Alg41 ? static_cast<std::uint64_t>(job.sketch) : 0);
  return key;
}

struct Outcome {
  double estimate = 0.0;
  int gamma = 0;
  double alpha = 0.0;
  CostReport cost;
};

double resolve_alpha(const JobSpec& job, Index n) {
  switch (job.alpha_mode) {
    case AlphaMode::Fixed: return job.alpha;
    case AlphaMode::NOverK: return static_cast<double>(n) / static_cast<double>(job.k);
    case AlphaMode::Search: break;
  }
  return 0.0;
}

Outcome run_job(const JobSpec& job, MatrixOracle& m, RngStream rng) {
  Outcome out;
  const Index n = m.cols();
  switch (job.alg) {
    case Algorithm::Baseline: {
      const auto rep = baseline_estimate(m);
      out.estimate = rep.estimate;
      out.gamma = rep.sweeps;
      break;
    }
    case Algorithm::Alg21: {
      const auto rep = sparsified_estimate_1(m, job.k, job.tol_cap, rng);
      out.estimate = rep.nu;
      out.gamma = rep.gamma;
      break;
    }
    case Algorithm::Alg22:
    case Algorithm::AlphaSearch: {
      double alpha = resolve_alpha(job, n);
      if (job.alg == Algorithm::AlphaSearch || job.alpha_mode == AlphaMode::Search) {
        RngStream search_rng = rng.substream(1);
        alpha = alpha_search(m, job.k, job.tol_cap, search_rng).final_alpha;
      }
      const auto rep = sparsified_estimate_scaled(m, job.k, job.tol_cap, alpha, rng);
      out.estimate = rep.nu;
      out.gamma = rep.gamma;
      out.alpha = alpha;
      break;
    }
    case Algorithm::Alg22a: {
      double alpha = resolve_alpha(job, n);
      if (job.alpha_mode == AlphaMode::Search) {
        RngStream search_rng = rng.substream(1);
        alpha = alpha_search(m, job.k, job.tol_cap, search_rng).final_alpha;
      }
      out.gamma = sparsified_estimate_scaled_instrumented(m, job.k, job.tol_cap, alpha, rng);
      out.estimate = std::numeric_limits<double>::quiet_NaN();
      out.alpha = alpha;
      break;
    }
    case Algorithm::Alg31: {
      const auto piv = maxvol1_random_init(m, rng);
      out.estimate = piv.value;
      out.gamma = piv.argmax_count;
      break;
    }
    case Algorithm::Alg31k: {
      const auto piv = maxvol1_k_init(m, job.k, job.tol_cap, rng);
      out.estimate = piv.value;
      out.gamma = piv.argmax_count;
      break;
    }
    case Algorithm::Alg32: {
      const auto rep = sparsified_estimate_ca(m, job.k, job.tol_cap, job.ca_tol, rng);
      out.estimate = rep.nu;
      out.gamma = rep.gamma;
      break;
    }
    case Algorithm::Alg41: {
      const auto cfg = SketchConfig::benchmark(job.r, job.sketch, rng.next_u64());
      const auto rep = lra_norm_report(m, NormKind::One, cfg);
      out.estimate = rep.estimate;
      out.gamma = static_cast<int>(rep.rank);
      break;
    }
  }
  out.cost = m.cost();
  return out;
}

void validate(const JobSpec& job, Index n) {
  if (uses_k(job.alg) && (job.k == 0 || job.k > n)) throw ParameterError("k must satisfy 1 <= k <= n");
  if (job.tol_cap < 2) throw ParameterError("TOL must be >= 2");
  if (job.alg == Algorithm::Alg32 && (job.ca_tol < 1 || job.ca_tol >= job.tol_cap))
    throw ParameterError("tol must satisfy 1 <= tol < TOL");
  if (uses_alpha(job.alg) && job.alpha_mode == AlphaMode::Fixed && !(job.alpha >= 1.0))
    throw ParameterError("alpha must be >= 1");
  if (job.alg == Algorithm::Alg41 && (job.r < 2 || 2 * job.r > n)) throw ParameterError("r must satisfy 2 <= r <= n/2");
}

double ratio_of(double exact, double estimate) {
  if (std::isnan(estimate)) return estimate;
  if (estimate == 0.0) return exact == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return exact / estimate;
}

using InstanceFactory = std::function<MatrixOracle(int trial)>;

std::map<JobSpec, std::vector<TrialRecord>> run_trials(const std::string& label, MatrixClass seed_class,
                                                       const InstanceFactory& make, const std::vector<JobSpec>& jobs,
                                                       const SuiteOptions& opts) {
  std::map<JobSpec, std::vector<TrialRecord>> out;
  for (const auto& job : jobs) out[job].resize(static_cast<std::size_t>(opts.trials));

  bool need_one = false;
  bool need_max = false;
  for (const auto& job : jobs) (is_max_abs_algorithm(job.alg) ? need_max : need_one) = true;

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < opts.trials; ++t) {
    try {
      MatrixOracle instance = make(t);
      double exact_one = 0.0;
      double exact_max = 0.0;
      if (need_one) {
        auto h = instance.fresh_handle();
        exact_one = exact_one_norm(h);
      }
      if (need_max) {
        auto h = instance.fresh_handle();
        exact_max = exact_max_abs(h);
      }
      for (const auto& job : jobs) {
        auto handle = instance.fresh_handle();
        const auto start = std::chrono::steady_clock::now();
        const Outcome o = run_job(job, handle, job_stream(opts.seed, seed_class, t, job));
        const auto stop = std::chrono::steady_clock::now();

        TrialRecord rec;
        rec.trial = t;
        rec.seed = matrix_seed(opts.seed, seed_class, t);
        rec.cls = label;
        rec.alg = std::string(to_string(job.alg));
        rec.n = instance.cols();
        rec.k = uses_k(job.alg) ? job.k : 0;
        rec.tol_cap = job.tol_cap;
        rec.ca_tol = job.alg == Algorithm::Alg32 ? job.ca_tol : 0;
        rec.alpha = o.alpha;
        rec.r = job.alg == Algorithm::Alg41 ? job.r : 0;
        rec.estimate = o.estimate;
        rec.exact = is_max_abs_algorithm(job.alg) ? exact_max : exact_one;
        rec.ratio = ratio_of(rec.exact, rec.estimate);
        rec.gamma = o.gamma;
        rec.entries_read = o.cost.entries_read;
        rec.flops = o.cost.flops;
        if (opts.timing) rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (is_column_norm_algorithm(job.alg) && rec.estimate > rec.exact)
          throw std::logic_error(fmt::format("{} returned {} > ||M||_1 = {} on {} trial {}", rec.alg, rec.estimate,
                                             rec.exact, label, t));
        out.find(job)->second[static_cast<std::size_t>(t)] = std::move(rec);
      }
    } catch (...) {
#pragma omp critical(sfnorm_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  for (const auto& e : kAlgNames)
    if (e.alg == a) return e.name;
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& e : kAlgNames)
    if (e.name == name) return e.alg;
  return std::nullopt;
}

bool is_column_norm_algorithm(Algorithm a) noexcept {
  return a == Algorithm::Alg21 || a == Algorithm::Alg22 || a == Algorithm::Alg32 || a == Algorithm::AlphaSearch;
}

bool is_max_abs_algorithm(Algorithm a) noexcept { return a == Algorithm::Alg31 || a == Algorithm::Alg31k; }

std::string JobSpec::label() const {
  std::string s(to_string(alg));
  if (uses_k(alg)) s += fmt::format(" k={}", k);
  if (alg == Algorithm::Alg32) s += fmt::format(" tol={}", ca_tol);
  if (alg == Algorithm::Alg41) s += fmt::format(" r={} {}", r, to_string(sketch));
  return s;
}

std::uint64_t matrix_seed(std::uint64_t base, MatrixClass cls, int trial) {
  return RngStream(base).substream(static_cast<std::uint64_t>(cls)).substream(static_cast<std::uint64_t>(trial))
      .substream(0)
      .seed();
}

RngStream job_stream(std::uint64_t base, MatrixClass cls, int trial, const JobSpec& job) {
  return RngStream(base)
      .substream(static_cast<std::uint64_t>(cls))
      .substream(static_cast<std::uint64_t>(trial))
      .substream(1 + job_key(job));
}

RunSummary summarize(const std::string& cls, const JobSpec& job, const std::vector<TrialRecord>& records) {
  RunSummary s;
  s.cls = cls;
  s.job = job;
  s.trials = records.size();
  if (records.empty()) return s;
  std::vector<double> ratios;
  std::vector<double> gammas;
  std::vector<double> reads;
  for (const auto& r : records) {
    ratios.push_back(r.ratio);
    gammas.push_back(r.gamma);
    reads.push_back(static_cast<double>(r.entries_read));
  }
  s.mean_ratio = mean_of(ratios);
  s.median_ratio = median_of(ratios);
  s.min_ratio = *std::min_element(ratios.begin(), ratios.end());
  s.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  s.mean_gamma = mean_of(gammas);
  s.mean_entries_read = mean_of(reads);
  return s;
}

std::string records_to_csv(const std::vector<TrialRecord>& records, const RunSummary& summary) {
  std::string out = "trial,seed,class,alg,n,k,TOL,tol,alpha,r,estimate,exact,ratio,gamma,entries_read,flops,wall_ms\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.trial, r.seed, r.cls, r.alg, r.n, r.k,
                       r.tol_cap, r.ca_tol, num(r.alpha), r.r, num(r.estimate), num(r.exact), num(r.ratio), r.gamma,
                       r.entries_read, r.flops, num(r.wall_ms));
  }
  if (records.empty()) return out;

  // Each statistic is applied to every numeric column.
  struct Column {
    std::vector<double> values;
  };
  std::vector<Column> cols(8);
  for (const auto& r : records) {
    const double v[] = {r.alpha,        r.estimate, r.exact, r.ratio, static_cast<double>(r.gamma),
                        static_cast<double>(r.entries_read), static_cast<double>(r.flops), r.wall_ms};
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].values.push_back(v[c]);
  }
  const auto& first = records.front();
  auto emit = [&](std::string_view stat, auto&& f) {
    std::vector<std::string> s;
    for (auto& c : cols) s.push_back(num(f(c.values)));
    out += fmt::format("SUMMARY:{},,{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", stat, first.cls, first.alg,
                       first.n, first.k, first.tol_cap, first.ca_tol, s[0], first.r, s[1], s[2], s[3], s[4], s[5],
                       s[6], s[7]);
  };
  emit("mean", [](const std::vector<double>& v) { return mean_of(v); });
  emit("median", [](const std::vector<double>& v) { return median_of(v); });
  emit("min", [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); });
  emit("max", [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); });
  (void)summary;
  return out;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg.job, cfg.n);
  if (cfg.trials < 1) throw ParameterError("trials must be positive");
  SuiteOptions opts;
  opts.n = cfg.n;
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.timing = cfg.timing;
  opts.data_dir = cfg.data_dir;

  std::string label(to_string(cfg.cls));
  InstanceFactory make;
  if (cfg.matrix_file) {
    label = cfg.matrix_file->stem().string();
    auto loaded = ingest_oracle(*cfg.matrix_file);
    if (loaded.rows() != loaded.cols()) throw ParameterError("matrix file must be square");
    make = [loaded](int) { return loaded.fresh_handle(); };
  } else if (is_file_class(cfg.cls)) {
    if (!cfg.data_dir) throw IngestionError(label + " needs a data directory");
    auto loaded = load_real_world(cfg.cls, *cfg.data_dir, cfg.n);
    if (!loaded) throw IngestionError(label + ".mtx not found in " + cfg.data_dir->string());
    make = [shared = *loaded](int) { return shared.fresh_handle(); };
  } else {
    make = [&cfg](int t) { return generate(cfg.cls, cfg.n, matrix_seed(cfg.seed, cfg.cls, t)); };
  }
  auto runs = run_trials(label, cfg.cls, make, {cfg.job}, opts);
  return std::move(runs.begin()->second);
}

std::vector<ClassRun> run_suite(const std::vector<MatrixClass>& classes, const std::vector<JobSpec>& jobs,
                                const SuiteOptions& opts) {
  for (const auto& job : jobs) validate(job, opts.n);
  std::vector<ClassRun> out;
  for (MatrixClass cls : classes) {
    ClassRun run{cls, false, {}, {}};
    InstanceFactory make;
    if (is_file_class(cls)) {
      std::optional<MatrixOracle> loaded;
      if (opts.data_dir) loaded = load_real_world(cls, *opts.data_dir, opts.n);
      if (!loaded) {
        run.skipped = true;
        run.skip_reason = opts.data_dir ? fmt::format("{}.mtx not found in {}", to_string(cls), opts.data_dir->string())
                                        : "no data directory given";
        out.push_back(std::move(run));
        continue;
      }
      make = [shared = *loaded](int) { return shared.fresh_handle(); };
    } else {
      make = [&opts, cls](int t) { return generate(cls, opts.n, matrix_seed(opts.seed, cls, t)); };
    }
    run.records = run_trials(std::string(to_string(cls)), cls, make, jobs, opts);
    out.push_back(std::move(run));
  }
  return out;
}

std::optional<double> delta_err_pct(double mean_a, double mean_b) {
  const double err_a = mean_a - 1.0;
  const double err_b = mean_b - 1.0;
  if (std::abs(err_a) < 0.5e-4) return std::nullopt;
  return 100.0 * (err_a - err_b) / err_a;
}

std::string compare_runs(const RunSummary& a, const RunSummary& b) {
  if (a.cls != b.cls) throw ParameterError("compare_runs: runs use different matrix classes");
  if (a.job.k != b.job.k) throw ParameterError("compare_runs: runs use different k");
  const auto d = delta_err_pct(a.mean_ratio, b.mean_ratio);
  return d ? fmt::format("{:.2f}", *d) : "-";
}

const ClassRun* find_run(const std::vector<ClassRun>& runs, MatrixClass cls) {
  for (const auto& r : runs)
    if (r.cls == cls) return &r;
  return nullptr;
}

std::optional<double> mean_ratio(const std::vector<ClassRun>& runs, MatrixClass cls, const JobSpec& job) {
  const ClassRun* run = find_run(runs, cls);
  if (!run || run->skipped) return std::nullopt;
  const auto it = run->records.find(job);
  if (it == run->records.end() || it->second.empty()) return std::nullopt;
  return summarize(run->records.begin()->second.front().cls, job, it->second).mean_ratio;
}

}  // namespace sfnorm
