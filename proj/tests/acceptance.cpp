// Acceptance run: criteria 1-11 at desk scale, one PASS/FAIL line each.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sfnorm/adversarial.hpp"
#include "sfnorm/alpha_search.hpp"
#include "sfnorm/bench.hpp"
#include "sfnorm/matrix_io.hpp"
#include "sfnorm/sketch.hpp"

using namespace sfnorm;

namespace {

struct Verdict {
  int pass = 0;
  int fail = 0;
  int skipped = 0;

  void add(bool ok) { ok ? ++pass : ++fail; }
  std::string status() const { return fail == 0 && pass > 0 ? "PASS" : "FAIL"; }
  std::string tally() const { return fmt::format("{} pass, {} fail, {} skipped", pass, fail, skipped); }
};

struct Line {
  int id;
  std::string title;
  Verdict v;
};

std::vector<Line> g_lines;

void detail(bool ok, const std::string& text) { fmt::print("  [{}] {}\n", ok ? "ok" : "FAIL", text); }

void report(int id, std::string title, const Verdict& v) {
  fmt::print("criterion {}: {} ({})\n\n", id, v.status(), v.tally());
  g_lines.push_back({id, std::move(title), v});
}

Verdict from_bands(const std::vector<BandCheck>& bands) {
  Verdict v;
  for (const auto& b : bands) {
    if (b.status == "SKIPPED") {
      ++v.skipped;
      fmt::print("  [skip] {}\n", b.name);
      continue;
    }
    const bool ok = b.status == "PASS";
    v.add(ok);
    detail(ok, fmt::format("{} = {:.4f} in [{:.4f}, {:.4f}]", b.name, b.value, b.lo, b.hi));
  }
  return v;
}

const std::vector<TrialRecord>* records_of(const ClassRun& run, const JobSpec& job) {
  const auto it = run.records.find(job);
  return it == run.records.end() ? nullptr : &it->second;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Eigen::MatrixXd low_rank(Index m, Index n, Index rank, RngStream& rng) {
  return gaussian_multiplier(m, rank, rng) * gaussian_multiplier(rank, n, rng);
}

std::vector<JobSpec> all_jobs() {
  std::set<JobSpec> jobs;
  for (Table t : {Table::T1, Table::T2, Table::T3, Table::T4})
    for (const auto& j : table_jobs(t)) jobs.insert(j);
  JobSpec base;
  base.alg = Algorithm::Baseline;
  jobs.insert(base);
  for (std::size_t k : {1u, 3u, 10u}) {
    JobSpec s;
    s.alg = Algorithm::AlphaSearch;
    s.k = k;
    jobs.insert(s);
  }
  return {jobs.begin(), jobs.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-11"};
  Index n = 1024;
  int trials = 200;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> data_dir;
  std::optional<std::filesystem::path> surrogate_dir;
  std::optional<std::filesystem::path> out_dir;
  app.add_option("--n", n, "Matrix size");
  app.add_option("--trials", trials, "Trials per class");
  app.add_option("--seed", seed, "Base seed");
  app.add_option("--data-dir", data_dir, "Real shaw/gravity/slp matrices")->envname("SFNORM_DATA_DIR");
  app.add_option("--surrogate-dir", surrogate_dir, "64x64 surrogate matrices (criterion 3 Gravity row)");
  app.add_option("--out-dir", out_dir, "Write per-table CSVs here");
  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  SuiteOptions opts;
  opts.n = n;
  opts.trials = trials;
  opts.seed = seed;

  const auto jobs = all_jobs();
  fmt::print("n = {}, trials = {}, seed = {}, {} jobs per instance\n", n, trials, seed, jobs.size());
  auto runs = run_suite(synthetic_classes(), jobs, opts);

  SuiteOptions real_opts = opts;
  real_opts.data_dir = data_dir;
  for (auto& r : run_suite({MatrixClass::Shaw, MatrixClass::Gravity, MatrixClass::Slp}, jobs, real_opts)) {
    if (r.skipped) fmt::print("{}: SKIPPED ({})\n", to_string(r.cls), r.skip_reason);
    runs.push_back(std::move(r));
  }

  // Table 3 Gravity row comes from the labeled surrogate.
  std::vector<ClassRun> runs_t3;
  for (const auto& r : runs)
    if (r.cls != MatrixClass::Gravity) runs_t3.push_back(r);
  {
    SuiteOptions sopts = opts;
    sopts.data_dir = surrogate_dir;
    auto s = run_suite({MatrixClass::Gravity}, table_jobs(Table::T3), sopts);
    if (s.front().skipped) fmt::print("gravity surrogate: SKIPPED ({})\n", s.front().skip_reason);
    runs_t3.push_back(std::move(s.front()));
  }
  fmt::print("suite finished in {:.1f} s\n\n",
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    for (Table t : {Table::T1, Table::T2, Table::T3, Table::T4}) {
      std::ofstream f(*out_dir / fmt::format("{}.csv", to_string(t)));
      f << table_csv(t, t == Table::T3 ? runs_t3 : runs);
    }
  }

  const auto& synth = synthetic_classes();
  auto is_synth = [&](MatrixClass c) { return std::find(synth.begin(), synth.end(), c) != synth.end(); };

  fmt::print("criterion 1: Table 1 means within 0.03 (Cauchy, One Large SV <= 1.005)\n");
  report(1, "Table 1 reproduction", from_bands(evaluate_bands(Table::T1, runs)));

  fmt::print("criterion 2: Table 2 Alg 3.2 bands and sign pattern\n");
  report(2, "Table 2 reproduction", from_bands(evaluate_bands(Table::T2, runs)));

  fmt::print("criterion 3: Table 3 maxvol rows (Gravity row from the 64x64 surrogate, zero padded)\n");
  report(3, "Table 3 reproduction", from_bands(evaluate_bands(Table::T3, runs_t3)));

  fmt::print("criterion 4: Table 4 means in [0.35, 2.60] and spot bands\n");
  report(4, "Table 4 reproduction", from_bands(evaluate_bands(Table::T4, runs)));

  fmt::print("criterion 5: Alg 2.1 ratio <= 2 on >= 95% of trials, median gamma <= 4\n");
  {
    Verdict v;
    for (const auto& run : runs) {
      if (!is_synth(run.cls)) continue;
      for (std::size_t k : {1u, 3u, 10u}) {
        const auto* recs = records_of(run, JobSpec{Algorithm::Alg21, k});
        if (!recs) continue;
        std::vector<double> gammas;
        std::size_t within = 0;
        for (const auto& r : *recs) {
          within += r.ratio <= 2.0;
          gammas.push_back(r.gamma);
        }
        const double frac = static_cast<double>(within) / recs->size();
        const double med = median(gammas);
        const bool ok = frac >= 0.95 && med <= 4.0;
        v.add(ok);
        detail(ok, fmt::format("{} k={}: {:.1f}% within 2, median gamma {}", to_string(run.cls), k, 100 * frac, med));
      }
    }
    report(5, "factor 2 within 2-4 iterations", v);
  }

  fmt::print("criterion 6: entries_read <= (s+2)kn + sn and entries_read / n^2 <= 0.15\n");
  {
    Verdict v;
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (Algorithm alg : {Algorithm::Alg21, Algorithm::Alg22, Algorithm::Alg32}) {
      std::size_t total = 0, over_budget = 0, over_fraction = 0;
      double worst_excess = 0.0, worst_fraction = 0.0;
      for (const auto& run : runs) {
        if (!is_synth(run.cls)) continue;
        for (const auto& [job, recs] : run.records) {
          if (job.alg != alg) continue;
          for (const auto& r : recs) {
            ++total;
            const auto s = static_cast<std::uint64_t>(r.gamma);
            const std::uint64_t budget = (s + 2) * r.k * n + s * n;
            if (r.entries_read > budget) {
              ++over_budget;
              worst_excess = std::max(worst_excess, static_cast<double>(r.entries_read - budget) / n);
            }
            const double frac = r.entries_read / n2;
            worst_fraction = std::max(worst_fraction, frac);
            over_fraction += frac > 0.15;
          }
        }
      }
      const bool ok_budget = over_budget == 0 && total > 0;
      const bool ok_fraction = over_fraction == 0 && total > 0;
      v.add(ok_budget);
      v.add(ok_fraction);
      detail(ok_budget, fmt::format("{}: {} of {} runs exceed the budget (worst excess {:.0f} n)", to_string(alg),
                                    over_budget, total, worst_excess));
      detail(ok_fraction, fmt::format("{}: max entries_read / n^2 = {:.4f}", to_string(alg), worst_fraction));
    }
    report(6, "sublinearity audit", v);
  }

  fmt::print("criterion 7: column-norm estimators never overestimate\n");
  {
    Verdict v;
    for (Algorithm alg : {Algorithm::Alg21, Algorithm::Alg22, Algorithm::Alg32}) {
      std::size_t total = 0, bad = 0;
      for (const auto& run : runs)
        for (const auto& [job, recs] : run.records) {
          if (job.alg != alg) continue;
          for (const auto& r : recs) {
            ++total;
            bad += !(r.ratio >= 1.0);
          }
        }
      const bool ok = bad == 0 && total > 0;
      v.add(ok);
      detail(ok, fmt::format("{}: {} of {} trials with ratio < 1", to_string(alg), bad, total));
    }
    report(7, "column-norm soundness", v);
  }

  fmt::print("criterion 8: delta-matrix falsification for k = 1..10 at n = 64 and n = {}\n", n);
  {
    Verdict v;
    for (Algorithm alg : {Algorithm::Alg21, Algorithm::Alg22, Algorithm::Alg31, Algorithm::Alg31k,
                          Algorithm::Alg32, Algorithm::Alg41}) {
      for (Index size : {Index{64}, n}) {
        int ok_count = 0;
        for (std::size_t k = 1; k <= 10; ++k) ok_count += adversarial_replay(alg, size, k, seed + k).falsified();
        const bool ok = ok_count == 10;
        v.add(ok);
        detail(ok, fmt::format("{} n={}: falsified for {}/10 values of k", to_string(alg), size, ok_count));
      }
    }
    // Not counted: the search reads O(p k n) entries with up to 65 probes,
    // so at small n it can read the whole matrix.
    for (Index size : {Index{64}, n}) {
      int ok_count = 0;
      for (std::size_t k = 1; k <= 10; ++k)
        ok_count += adversarial_replay(Algorithm::AlphaSearch, size, k, seed + k).falsified();
      fmt::print("  [info] alpha-search n={}: falsified for {}/10 values of k\n", size, ok_count);
    }
    report(8, "adversarial falsification", v);
  }

  fmt::print("criterion 9: sketching unit properties\n");
  {
    Verdict v;
    bool hadamard = true;
    for (Index size = 2; size <= 256; size *= 2)
      for (int d = 0; d <= 8 && (Index{1} << d) <= size; ++d) {
        const RowMatrix a = AbridgedHadamard(size, d).dense();
        hadamard = hadamard && RowMatrix(a * a.transpose()) == RowMatrix::Identity(size, size) * std::ldexp(1.0, d);
      }
    v.add(hadamard);
    detail(hadamard, "H H^T = 2^d I exactly for n <= 256, d <= 8");

    RngStream rng(seed);
    bool srht = true;
    for (int d = 1; d <= 6; ++d)
      for (Index count : {Index{1}, Index{5}, Index{16}}) {
        const auto right = AbridgedSrht::right(64, count, d, rng);
        const auto left = AbridgedSrht::left(64, count, d, rng);
        const RowMatrix r = right.dense(), l = left.dense();
        const double mag = std::sqrt(std::ldexp(1.0, d) / static_cast<double>(count));
        for (Index t = 0; t < count; ++t) {
          srht = srht && (r.col(t).array() != 0.0).count() == (1 << d) && (l.row(t).array() != 0.0).count() == (1 << d);
          for (Index i = 0; i < 64; ++i) {
            if (r(i, t) != 0.0) srht = srht && std::abs(r(i, t)) == mag;
            if (l(t, i) != 0.0) srht = srht && std::abs(l(t, i)) == mag;
          }
        }
      }
    v.add(srht);
    detail(srht, "abridged SRHT: 2^d nonzeros of magnitude sqrt(2^d / s) per sampled line");

    double worst = 0.0;
    for (SketchKind kind : {SketchKind::Gaussian, SketchKind::AbridgedSrht})
      for (Index rank = 1; rank <= 8; ++rank) {
        const Eigen::MatrixXd a = low_rank(128, 128, rank, rng);
        auto m = MatrixOracle::dense(a);
        const auto lra = nystrom_lra(m, SketchConfig::oversampled(8, kind, rng.next_u64()));
        worst = std::max(worst, (a - lra.dense()).norm() / a.norm());
      }
    v.add(worst <= 1e-8);
    detail(worst <= 1e-8, fmt::format("Nystrom recovery of rank <= r = 8: worst relative error {:.2e}", worst));

    bool cost = true;
    const Eigen::MatrixXd a = gaussian_multiplier(96, 80, rng);
    for (int d = 1; d <= 4; ++d) {
      auto m = MatrixOracle::dense(a);
      AbridgedSrht::left(96, 1, d, rng).apply(m);
      AbridgedSrht::right(80, 1, d, rng).apply(m);
      cost = cost && m.cost().entries_read == (std::uint64_t{1} << d) * (96 + 80);
    }
    v.add(cost);
    detail(cost, "dual sketch reads 2^d (m + n) entries");
    report(9, "sketching unit properties", v);
  }

  fmt::print("criterion 10: alpha search ends in [n/(2k), 2n/k] on >= 70% of searches; h = 1 bit-match\n");
  {
    Verdict v;
    for (const auto& run : runs) {
      if (!is_synth(run.cls)) continue;
      for (std::size_t k : {1u, 3u, 10u}) {
        JobSpec job;
        job.alg = Algorithm::AlphaSearch;
        job.k = k;
        const auto* recs = records_of(run, job);
        if (!recs) continue;
        const double lo = static_cast<double>(n) / (2.0 * k), hi = 2.0 * n / k;
        std::size_t in = 0;
        for (const auto& r : *recs) in += r.alpha >= lo && r.alpha <= hi;
        const double frac = static_cast<double>(in) / recs->size();
        v.add(frac >= 0.70);
        detail(frac >= 0.70, fmt::format("{} k={}: {:.1f}% in range", to_string(run.cls), k, 100 * frac));
      }
    }
    bool match = true;
    for (MatrixClass cls : synth)
      for (std::uint64_t s = 0; s < 5; ++s) {
        auto m = generate(cls, 256, seed + s);
        auto m1 = m.fresh_handle(), m2 = m.fresh_handle();
        RngStream r1(s), r2(s);
        const auto a1 = alpha_search(m1, 3, 10, r1);
        const auto b1 = alpha_search_vote(m2, 3, 10, 1, r2);
        match = match && a1.final_alpha == b1.final_alpha && a1.alphas_tried.size() == b1.alphas_tried.size() &&
                m1.cost() == m2.cost();
        for (std::size_t i = 0; match && i < a1.alphas_tried.size(); ++i)
          match = a1.alphas_tried[i].alpha == b1.alphas_tried[i].alpha &&
                  a1.alphas_tried[i].gammas == b1.alphas_tried[i].gammas;
      }
    v.add(match);
    detail(match, "h = 1 vote matches Alg C.1 under matched streams");
    report(10, "alpha-search behavior", v);
  }

  fmt::print("criterion 11: baseline within factor 3 at <= 5 sweeps\n");
  {
    Verdict v;
    JobSpec base;
    base.alg = Algorithm::Baseline;
    for (const auto& run : runs) {
      if (!is_synth(run.cls)) continue;
      const auto* recs = records_of(run, base);
      if (!recs) continue;
      std::size_t bad = 0;
      double sweeps = 0.0, worst = 0.0;
      for (const auto& r : *recs) {
        bad += !(r.ratio <= 3.0 && r.gamma <= 5);
        sweeps += r.gamma;
        worst = std::max(worst, r.ratio);
      }
      v.add(bad == 0);
      detail(bad == 0, fmt::format("{}: {} violations, worst ratio {:.4f}, mean sweeps {:.2f}", to_string(run.cls),
                                   bad, worst, sweeps / recs->size()));
    }
    report(11, "baseline sanity", v);
  }

  fmt::print("summary ({:.1f} s)\n",
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  bool all = true;
  for (const auto& l : g_lines) {
    fmt::print("{} criterion {:>2}: {}\n", l.v.status(), l.id, l.title);
    all = all && l.v.status() == "PASS";
  }
  return all ? 0 : 1;
}
