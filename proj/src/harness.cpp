#include "hamrg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hamrg/error.hpp"
#include "hamrg/parallel.hpp"
#include "hamrg/path_cover.hpp"
#include "hamrg/posa.hpp"
#include "hamrg/trunc_poisson.hpp"

namespace hamrg {

void ExperimentConfig::validate() const {
  if (n < 4) throw std::invalid_argument("n must be at least 4");
  if (!(c > 1.5)) throw std::invalid_argument("c must exceed 1.5");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (s_override && *s_override < 0) throw std::invalid_argument("s must be non-negative");
  const auto m_total = static_cast<std::int64_t>(std::floor(c * n));
  const std::int64_t s = s_override ? *s_override : default_reserve_size(n);
  if (2 * (m_total - s) < 3 * static_cast<std::int64_t>(n)) {
    throw InfeasibleTarget("floor(cn) - s = " + std::to_string(m_total - s) +
                           " is below 3n/2");
  }
}

TrajectoryStats trajectory_stats(const std::vector<TrajectoryRecord>& trajectory,
                                 std::int64_t m0, Vertex n, double epsilon) {
  TrajectoryStats out;
  const double threshold = std::pow(static_cast<double>(n), 0.4 + 2 * epsilon);
  out.tau = static_cast<std::int64_t>(trajectory.size());
  if (static_cast<double>(m0) <= threshold) {
    out.tau = 0;
    return out;
  }
  for (const auto& r : trajectory) {
    if (static_cast<double>(r.m) <= threshold) {
      out.tau = r.i;
      break;
    }
  }
  // zeta_0 = 0, and records carry i = 1, 2, ...
  for (const auto& r : trajectory) {
    if (r.i >= out.tau) break;
    out.zeta_max = std::max(out.zeta_max, r.zeta);
  }
  return out;
}

PipelineArtifacts run_on_instance(const MultiGraph& e1, const std::vector<Edge>& e2,
                                  const ExperimentConfig& config, Rng& rng) {
  PipelineArtifacts art;
  RunRecord& rec = art.record;
  const Vertex n = e1.vertex_count();
  rec.n = n;
  rec.c = config.c;
  rec.seed = config.seed;
  rec.s = static_cast<std::int64_t>(e2.size());

  TwoGreedy greedy(e1);
  greedy.run(rng);
  art.matching = greedy.matching();
  art.trajectory = greedy.trajectory();
  const TrajectoryStats ts = trajectory_stats(art.trajectory, e1.edge_count(), n, config.epsilon);
  rec.tau = ts.tau;
  rec.zeta_max = ts.zeta_max;

  const MatchingComponents comps = matching_components(art.matching, n);
  rec.kappa = static_cast<std::int64_t>(comps.components.size());
  rec.kappa1 = comps.kappa1;
  rec.kappa2 = comps.kappa2;

  const PathCover raw = cover_from_matching(art.matching, n);
  rec.cover_before_merge = static_cast<std::int64_t>(raw.size());
  const PathCover cover = greedy_merge(raw, e1);
  rec.cover_size = static_cast<std::int64_t>(cover.size());
  art.cover = cover.paths();
  rec.p1_ok = p1_check(rec.cover_size, rec.s, n, config.beta);

  PosaOptions posa_options;
  posa_options.check_invariants = config.check_invariants;
  const HamiltonResult ham = run_all(cover, e1, e2, posa_options);
  rec.rounds = ham.rounds;
  rec.reveals = ham.reveals;
  rec.closures = ham.closures;
  rec.end_sizes = ham.end_sizes;
  rec.posa_violations = ham.posa_violations;
  rec.cycle_violations = ham.cycle_violations;
  if (ham.success) {
    rec.verified = verify_cycle(e1, e2, ham.cycle);
    rec.success = rec.verified;
    art.cycle = ham.cycle;
  }
  if (!rec.success) {
    if (ham.success) {
      rec.failure = "error";
      rec.error = "cycle failed verification";
    } else {
      rec.failure = rec.p1_ok ? "reserve_exhausted" : "p1_fail";
    }
  }
  return art;
}

PipelineArtifacts run_trial(const ExperimentConfig& config, std::int64_t trial) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = derive_stream(config.seed, static_cast<std::uint64_t>(trial));
  PipelineArtifacts art;
  try {
    SamplerOptions options;
    options.mode = config.sampler;
    options.max_rejects = config.max_rejects;
    const Instance inst = sample_instance_method_b(config.n, config.c, config.s_override, rng,
                                                   options);
    art = run_on_instance(inst.e1, inst.e2, config, rng);
  } catch (const RetryLimitExceeded& e) {
    art.record.failure = "sampler_retry_limit";
    art.record.error = e.what();
  } catch (const Error& e) {
    art.record.failure = "error";
    art.record.error = e.what();
  }
  RunRecord& rec = art.record;
  rec.n = config.n;
  rec.c = config.c;
  rec.seed = config.seed;
  rec.trial = trial;
  if (config.record_timing) {
    rec.ms_elapsed = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return art;
}

std::vector<RunRecord> run_pipeline(const ExperimentConfig& config) {
  config.validate();
  std::vector<RunRecord> records(static_cast<std::size_t>(config.trials));
  parallel_for(records.size(), config.jobs, [&](std::size_t t) {
    records[t] = run_trial(config, static_cast<std::int64_t>(t)).record;
  });
  if (!config.out.empty()) {
    std::ofstream out(config.out);
    if (!out) throw std::runtime_error("cannot write " + config.out);
    write_records_csv(out, records, config.record_timing);
  }
  return records;
}

namespace {

std::string format_double(double x, int precision = 6) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << x;
  return ss.str();
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records,
                       bool record_timing) {
  out << "n,c,seed,success,rounds,reveals,cover_size,zeta_max,kappa,p1_ok,ms_elapsed,"
         "trial,tau,kappa1,kappa2,failure\n";
  for (const auto& r : records) {
    out << r.n << ',' << format_double(r.c) << ',' << r.seed << ',' << (r.success ? 1 : 0)
        << ',' << r.rounds << ',' << r.reveals << ',' << r.cover_size << ',' << r.zeta_max
        << ',' << r.kappa << ',' << (r.p1_ok ? 1 : 0) << ',';
    if (record_timing) out << std::fixed << std::setprecision(3) << r.ms_elapsed << std::defaultfloat;
    out << ',' << r.trial << ',' << r.tau << ',' << r.kappa1 << ',' << r.kappa2 << ','
        << r.failure << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& trajectory) {
  out << "i,m,zeta,z2,y3,y,z,lambda,p2,p3,a,b,kappa1,kappa2\n";
  for (const auto& r : trajectory) {
    out << r.i << ',' << r.m << ',' << r.zeta << ',' << r.z2 << ',' << r.y3 << ',' << r.y << ','
        << r.z << ',';
    if (r.lambda) out << format_double(*r.lambda, 10);
    out << ',' << format_double(r.p2) << ',' << format_double(r.p3) << ',' << (r.a ? 1 : 0)
        << ',' << (r.b ? 1 : 0) << ',' << r.kappa1 << ',' << r.kappa2 << '\n';
  }
}

std::vector<SweepRow> sweep(const std::vector<Vertex>& n_list, const std::vector<double>& c_list,
                            const ExperimentConfig& base) {
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (const Vertex n : n_list) {
    for (const double c : c_list) {
      ExperimentConfig config = base;
      config.n = n;
      config.c = c;
      config.out.clear();
      config.seed = derive_stream(base.seed, cell++)();
      SweepRow row;
      row.n = n;
      row.c = c;
      row.seed = config.seed;
      row.trials = config.trials;
      std::vector<RunRecord> records;
      try {
        records = run_pipeline(config);
      } catch (const InfeasibleTarget&) {
        row.errors = config.trials;
        rows.push_back(row);
        continue;
      }
      double cover = 0.0;
      double reveals = 0.0;
      for (const auto& r : records) {
        row.successes += r.success;
        row.reserve_exhausted += r.failure == "reserve_exhausted";
        row.p1_fail += r.failure == "p1_fail";
        row.sampler_retry_limit += r.failure == "sampler_retry_limit";
        row.errors += r.failure == "error";
        cover += static_cast<double>(r.cover_size);
        reveals += static_cast<double>(r.reveals);
      }
      row.mean_cover_size = cover / static_cast<double>(records.size());
      row.mean_reveals = reveals / static_cast<double>(records.size());
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,c,seed,trials,successes,success_rate,reserve_exhausted,p1_fail,"
         "sampler_retry_limit,errors,mean_cover_size,mean_reveals\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.c) << ',' << r.seed << ',' << r.trials << ','
        << r.successes << ',' << format_double(r.success_rate()) << ',' << r.reserve_exhausted
        << ',' << r.p1_fail << ',' << r.sampler_retry_limit << ',' << r.errors << ','
        << format_double(r.mean_cover_size) << ',' << format_double(r.mean_reveals) << '\n';
  }
}

bool ModelReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ModelCheck& c) { return c.passed; });
}

ModelReport check_model(Vertex n, double c, std::int64_t samples, std::uint64_t seed, int jobs) {
  constexpr int kMaxK = 10;
  const auto m = static_cast<std::int64_t>(std::floor(c * n));
  const DegreePartition partition = DegreePartition::all_j3(n, m);
  const double lambda = tp::solve_lambda(0, n, static_cast<double>(2 * m));
  const tp::TruncPoissonParams params{lambda, 3};

  // Samples are split into fixed chunks with their own streams, so the
  // report does not depend on the number of threads.
  const std::int64_t chunks = std::min<std::int64_t>(samples, 64);
  struct ChunkResult {
    std::vector<double> sum_f;   // per k, sum of per-sequence frequencies
    std::vector<double> sum_f2;  // and of their squares
    double attempts = 0.0;
    std::int64_t sequences = 0;
    std::int64_t simple = 0;
    std::int64_t simple_tries = 0;
  };
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));
  const std::int64_t simple_budget = std::min<std::int64_t>(samples, 200);
  parallel_for(results.size(), jobs, [&](std::size_t ci) {
    ChunkResult& r = results[ci];
    r.sum_f.assign(kMaxK + 1, 0.0);
    r.sum_f2.assign(kMaxK + 1, 0.0);
    Rng rng = derive_stream(seed, ci, 0x6d6f64656cULL);
    const std::int64_t lo = samples * static_cast<std::int64_t>(ci) / chunks;
    const std::int64_t hi = samples * static_cast<std::int64_t>(ci + 1) / chunks;
    std::vector<std::int64_t> counts(kMaxK + 1);
    for (std::int64_t s = lo; s < hi; ++s) {
      const DegreeSample ds = sample_degree_sequence(partition, rng);
      r.attempts += static_cast<double>(ds.attempts);
      ++r.sequences;
      std::fill(counts.begin(), counts.end(), 0);
      for (const std::int32_t d : ds.degrees) {
        if (d <= kMaxK) ++counts[d];
      }
      for (int k = 0; k <= kMaxK; ++k) {
        const double f = static_cast<double>(counts[k]) / n;
        r.sum_f[k] += f;
        r.sum_f2[k] += f * f;
      }
      if (s < simple_budget) {
        ++r.simple_tries;
        PairingSampler pairing(ds.degrees);
        r.simple += pairing.try_once(rng).has_value();
      }
    }
  });

  ChunkResult total;
  total.sum_f.assign(kMaxK + 1, 0.0);
  total.sum_f2.assign(kMaxK + 1, 0.0);
  for (const auto& r : results) {
    for (int k = 0; k <= kMaxK; ++k) {
      total.sum_f[k] += r.sum_f[k];
      total.sum_f2[k] += r.sum_f2[k];
    }
    total.attempts += r.attempts;
    total.sequences += r.sequences;
    total.simple += r.simple;
    total.simple_tries += r.simple_tries;
  }
  const auto count = static_cast<double>(total.sequences);

  ModelReport report;
  {
    ModelCheck check{"degree_pmf", true, 0.0, ""};
    std::ostringstream detail;
    for (int k = 3; k <= kMaxK; ++k) {
      const double mean = total.sum_f[k] / count;
      const double var = std::max(0.0, total.sum_f2[k] / count - mean * mean);
      const double p = tp::pmf(params, k);
      // Per-sequence frequencies are averaged, so their spread already
      // includes the dependence created by conditioning on the sum.
      const double se_emp = count > 1 ? std::sqrt(var / (count - 1)) : 0.0;
      const double se = se_emp > 0 ? se_emp : std::sqrt(p * (1 - p) / (count * n));
      const double z = (mean - p) / se;
      check.statistic = std::max(check.statistic, std::abs(z));
      detail << " k=" << k << " emp=" << format_double(mean, 8) << " pmf=" << format_double(p, 8)
             << " z=" << format_double(z, 3);
    }
    check.passed = check.statistic <= 4.0;
    check.detail = "max |z| over k<=10 (gate 4):" + detail.str();
    report.checks.push_back(check);
  }
  {
    const tp::MomentSummary mom = tp::moments(0, n, lambda);
    const double predicted = tp::local_clt_estimate(n, std::sqrt(mom.pooled_sigma_sq), 0);
    const double mean_attempts = total.attempts / count;
    const double ratio = mean_attempts * predicted;
    ModelCheck check{"acceptance_rate", ratio >= 1.0 / 3 && ratio <= 3.0, ratio, ""};
    check.detail = "mean attempts " + format_double(mean_attempts) + ", 1/estimate " +
                   format_double(1.0 / predicted) + ", ratio in [1/3, 3]";
    report.checks.push_back(check);
  }
  {
    Rng diag_rng = derive_stream(seed, 0, 1);
    const SimplicityDiagnostic diag =
        simplicity_diagnostic(sample_degree_sequence(partition, diag_rng).degrees);
    const double frac = total.simple_tries > 0
                            ? static_cast<double>(total.simple) / total.simple_tries
                            : 0.0;
    ModelCheck check{"simple_fraction", true, frac, ""};
    check.detail = std::to_string(total.simple) + "/" + std::to_string(total.simple_tries) +
                   " simple, exp(-rho(rho+1)) = " + format_double(diag.mckay_estimate) +
                   ", exp(-nu/2-nu^2/4) = " + format_double(diag.configuration_estimate) +
                   ", rho = " + format_double(diag.rho) + " (diagnostic)";
    report.checks.push_back(check);
  }
  {
    Rng rng = derive_stream(seed, 0, 2);
    const std::int64_t draws = std::max<std::int64_t>(samples * 100, 10000);
    double sum = 0.0;
    for (std::int64_t i = 0; i < draws; ++i) sum += tp::sample(params, rng);
    const double mean = sum / static_cast<double>(draws);
    const double z = (mean - tp::mean(params)) /
                     std::sqrt(tp::variance(params) / static_cast<double>(draws));
    ModelCheck check{"trunc_poisson_mean", std::abs(z) <= 4.0, z, ""};
    check.detail = "sample mean " + format_double(mean) + " vs " + format_double(tp::mean(params));
    report.checks.push_back(check);
  }
  return report;
}

void write_model_report(std::ostream& out, const ModelReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " statistic=" << format_double(c.statistic)
        << "  " << c.detail << '\n';
  }
}

}  // namespace hamrg
