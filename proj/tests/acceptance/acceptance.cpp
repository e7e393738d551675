// Acceptance suite. Each criterion prints one line: "<id> PASS|FAIL <name>: <detail>".
// With no arguments every criterion runs; otherwise only the listed ids.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "../support/small_graphs.hpp"
#include "hamrg/harness.hpp"
#include "hamrg/oracle.hpp"
#include "hamrg/parallel.hpp"
#include "hamrg/seq_model.hpp"
#include "hamrg/simd/kernels.hpp"
#include "hamrg/trunc_poisson.hpp"

using namespace hamrg;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int g_jobs = 1;

std::string fmt(double x, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << x;
  return ss.str();
}

// Checked without the library verifier: a permutation of 0..n-1 whose
// consecutive pairs, wrapping around, are edges of E1 or E2.
bool cycle_in(const MultiGraph& e1, const std::vector<Edge>& e2, const std::vector<Vertex>& cycle) {
  const auto n = static_cast<std::size_t>(e1.vertex_count());
  if (n < 3 || cycle.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (const Vertex v : cycle) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) return false;
    seen[v] = 1;
  }
  std::unordered_set<std::uint64_t> edges;
  for (const Edge& e : e1.edges()) edges.insert(e.key());
  for (const Edge& e : e2) edges.insert(e.key());
  for (std::size_t i = 0; i < n; ++i) {
    if (!edges.contains(Edge(cycle[i], cycle[(i + 1) % n]).key())) return false;
  }
  return true;
}

MultiGraph union_graph(const MultiGraph& e1, const std::vector<Edge>& e2) {
  MultiGraph g = e1;
  for (const Edge& e : e2) g.add_edge(e.u, e.v);
  return g;
}

ExperimentConfig base_config(Vertex n, double c, std::uint64_t seed) {
  ExperimentConfig config;
  config.n = n;
  config.c = c;
  config.seed = seed;
  config.jobs = g_jobs;
  config.record_timing = false;
  return config;
}

// ---------------------------------------------------------------------------

Outcome c01_correctness_gate() {
  struct Batch {
    Vertex n_lo, n_hi;
    double c_lo, c_hi;
    bool s_equals_n;
    int trials;
    SimpleSampling mode;
  };
  const Batch batches[] = {
      {8, 14, 2.6, 3.5, true, 100, SimpleSampling::Exact},
      {30, 60, 2.6, 3.5, true, 100, SimpleSampling::Exact},
      {100, 100, 3.0, 3.0, false, 50, SimpleSampling::GivenDegrees},
      {1000, 1000, 2.7, 2.7, false, 30, SimpleSampling::GivenDegrees},
      {10000, 10000, 2.7, 2.7, false, 5, SimpleSampling::GivenDegrees},
  };
  std::int64_t runs = 0;
  std::int64_t successes = 0;
  std::int64_t bad = 0;
  std::uint64_t stream = 0;
  for (const Batch& b : batches) {
    for (int t = 0; t < b.trials; ++t) {
      Rng rng = derive_stream(101, stream++);
      const Vertex n = b.n_lo + uniform_below<Vertex>(rng, b.n_hi - b.n_lo + 1);
      const double c = b.c_lo + (b.c_hi - b.c_lo) * uniform01(rng);
      const std::optional<std::int64_t> s =
          b.s_equals_n ? std::optional<std::int64_t>(n) : std::nullopt;
      SamplerOptions options;
      options.mode = b.mode;
      const Instance inst = sample_instance_method_b(n, c, s, rng, options);
      ExperimentConfig config = base_config(n, c, 101);
      config.s_override = s;
      const PipelineArtifacts a = run_on_instance(inst.e1, inst.e2, config, rng);
      ++runs;
      if (!a.record.success) continue;
      ++successes;
      if (!a.record.verified || !cycle_in(inst.e1, inst.e2, a.cycle)) ++bad;
    }
  }
  return {bad == 0 && successes > 0,
          std::to_string(successes) + " reported cycles over " + std::to_string(runs) +
              " runs (n 8..10000), " + std::to_string(bad) + " failed independent verification"};
}

Outcome c02_oracle_agreement() {
  int oracle_yes = 0;
  int pipeline_yes = 0;
  int unconfirmed = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng = derive_stream(102, static_cast<std::uint64_t>(t));
    const Vertex n = 8 + uniform_below<Vertex>(rng, 7);
    const double c = 2.6 + 0.9 * uniform01(rng);
    SamplerOptions options;
    options.mode = SimpleSampling::Exact;
    const Instance inst = sample_instance_method_b(n, c, n, rng, options);
    ExperimentConfig config = base_config(n, c, 102);
    config.s_override = n;
    const PipelineArtifacts a = run_on_instance(inst.e1, inst.e2, config, rng);
    const bool ham = exact_hamiltonian(union_graph(inst.e1, inst.e2)).hamiltonian;
    oracle_yes += ham;
    if (a.record.success) {
      if (ham) {
        ++pipeline_yes;
      } else {
        ++unconfirmed;
      }
    }
  }
  const double rate = oracle_yes > 0 ? static_cast<double>(pipeline_yes) / oracle_yes : 0.0;
  return {unconfirmed == 0 && rate >= 0.9,
          "pipeline found " + std::to_string(pipeline_yes) + " of " + std::to_string(oracle_yes) +
              " oracle-Hamiltonian instances (rate " + fmt(rate) + ", gate 0.9), " +
              std::to_string(unconfirmed) + " successes not confirmed"};
}

// The ten n = 1e5, c = 2.7 runs shared by criteria 3 to 5.
const std::vector<PipelineArtifacts>& large_runs() {
  static const std::vector<PipelineArtifacts> runs = [] {
    const ExperimentConfig config = base_config(100000, 2.7, 103);
    std::vector<PipelineArtifacts> out(10);
    parallel_for(out.size(), g_jobs, [&](std::size_t t) {
      out[t] = run_trial(config, static_cast<std::int64_t>(t));
    });
    return out;
  }();
  return runs;
}

Outcome c03_cover_bound() {
  const double bound = std::pow(1e5, 0.48);
  std::int64_t worst = 0;
  bool ok = true;
  for (const auto& a : large_runs()) {
    worst = std::max(worst, a.record.cover_size);
    ok = ok && a.record.error.empty() && static_cast<double>(a.record.cover_size) <= bound;
  }
  return {ok, "max merged cover " + std::to_string(worst) + " vs n^0.48 = " + fmt(bound) +
                  " over 10 runs at n=1e5, c=2.7"};
}

Outcome c04_zeta_bound() {
  const double zeta_bound = std::pow(1e5, 0.45);
  std::int64_t zeta = 0;
  std::int64_t comps = 0;
  bool ok = true;
  for (const auto& a : large_runs()) {
    zeta = std::max(zeta, a.record.zeta_max);
    comps = std::max(comps, a.record.kappa1 + a.record.kappa2);
    ok = ok && a.record.error.empty() && static_cast<double>(a.record.zeta_max) <= zeta_bound &&
         static_cast<double>(a.record.kappa1 + a.record.kappa2) <= 2 * zeta_bound;
  }
  return {ok, "max zeta before tau " + std::to_string(zeta) + " vs n^0.45 = " + fmt(zeta_bound) +
                  ", max kappa1+kappa2 " + std::to_string(comps) + " vs " + fmt(2 * zeta_bound)};
}

Outcome c05_drift() {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t count = 0;
  for (const auto& a : large_runs()) {
    const auto& traj = a.trajectory;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
      if (traj[i].zeta <= 0 || !traj[i].a) continue;
      const auto d = static_cast<double>(traj[i + 1].zeta - traj[i].zeta);
      sum += d;
      sum_sq += d * d;
      ++count;
    }
  }
  if (count < 2) return {false, "only " + std::to_string(count) + " eligible steps"};
  const double mean = sum / static_cast<double>(count);
  const double var = (sum_sq - sum * mean) / static_cast<double>(count - 1);
  const double t = mean / std::sqrt(var / static_cast<double>(count));
  return {count >= 10000 && t < -3.0,
          "mean zeta increment " + fmt(mean) + " over " + std::to_string(count) +
              " steps with zeta>0 and event A (need 1e4), t = " + fmt(t) + " (gate -3)"};
}

Outcome c06_degree_pmf() {
  const ModelReport report = check_model(10000, 3.0, 10000, 106, g_jobs);
  const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                               [](const ModelCheck& c) { return c.name == "degree_pmf"; });
  return {it->passed, "n=1e4, c=3, 1e4 sequences, " + it->detail};
}

Outcome c07_local_clt() {
  constexpr std::int64_t kN = 10000;
  constexpr std::int64_t kM = 30000;
  constexpr std::int64_t kDraws = 1'000'000;
  const double lambda = tp::solve_lambda(0, kN, 2.0 * kM);
  const tp::TruncPoissonParams params{lambda, 3};
  const tp::SamplingTable table(params);
  const tp::MomentSummary mom = tp::moments(0, kN, lambda);
  const double predicted = tp::local_clt_estimate(kN, std::sqrt(mom.pooled_sigma_sq), 0);

  constexpr std::size_t kChunks = 100;
  std::vector<std::int64_t> hits(kChunks, 0);
  parallel_for(kChunks, g_jobs, [&](std::size_t ci) {
    Rng rng = derive_stream(107, ci);
    std::vector<std::uint32_t> u(kN);
    std::vector<std::int32_t> d(kN);
    for (std::int64_t i = 0; i < kDraws / static_cast<std::int64_t>(kChunks); ++i) {
      fill_uniform_u32(rng, u);
      hits[ci] += simd::lookup_draws(table.thresholds(), 3, u, d) == 2 * kM;
    }
  });
  std::int64_t total = 0;
  for (const auto h : hits) total += h;
  const double freq = static_cast<double>(total) / kDraws;
  const double rel = std::abs(freq / predicted - 1.0);

  // Attempts of the rejection sampler against the reciprocal.
  const DegreePartition partition = DegreePartition::all_j3(kN, kM);
  constexpr int kSequences = 200;
  Rng rng = derive_stream(107, kChunks);
  double attempts = 0.0;
  for (int s = 0; s < kSequences; ++s) {
    attempts += static_cast<double>(sample_degree_sequence(partition, rng).attempts);
  }
  const double mean_attempts = attempts / kSequences;
  const double ratio = mean_attempts * predicted;
  return {rel <= 0.15 && ratio >= 1.0 / 3 && ratio <= 3.0,
          "Pr(Z=2M) " + fmt(freq, 6) + " from 1e6 sums vs " + fmt(predicted, 6) +
              " (off by " + fmt(100 * rel, 3) + "%, gate 15%), mean attempts " +
              fmt(mean_attempts) + " vs " + fmt(1.0 / predicted) + " (ratio " + fmt(ratio, 3) +
              ", gate [1/3, 3])"};
}

Outcome c08_simple_fraction() {
  constexpr Vertex kN = 10000;
  constexpr std::int64_t kM = 30000;
  constexpr int kAttempts = 200;
  const DegreePartition partition = DegreePartition::all_j3(kN, kM);
  Rng rng = derive_stream(108, 0);
  int simple = 0;
  double rho = 0.0;
  double mckay = 0.0;
  for (int a = 0; a < kAttempts; ++a) {
    const DegreeSample ds = sample_degree_sequence(partition, rng);
    const SimplicityDiagnostic diag = simplicity_diagnostic(ds.degrees);
    rho += diag.rho / kAttempts;
    mckay += diag.mckay_estimate / kAttempts;
    PairingSampler pairing(ds.degrees);
    simple += pairing.try_once(rng).has_value();
  }
  const double frac = static_cast<double>(simple) / kAttempts;
  return {frac >= 0.01, std::to_string(simple) + "/" + std::to_string(kAttempts) +
                            " pairings simple (gate 0.01), mean rho " + fmt(rho) +
                            ", exp(-rho(rho+1)) " + fmt(mckay, 3)};
}

Outcome c09_posa_invariant() {
  ExperimentConfig config = base_config(1000, 2.7, 109);
  config.check_invariants = true;
  std::vector<PipelineArtifacts> runs(50);
  parallel_for(runs.size(), g_jobs, [&](std::size_t t) {
    runs[t] = run_trial(config, static_cast<std::int64_t>(t));
  });
  std::int64_t violations = 0;
  std::int64_t closures = 0;
  std::int64_t errors = 0;
  for (const auto& a : runs) {
    violations += a.record.posa_violations;
    closures += a.record.closures;
    errors += !a.record.error.empty();
  }
  return {violations == 0 && errors == 0 && closures > 0,
          std::to_string(violations) + " violations of |N(END)| < 2|END| over " +
              std::to_string(closures) + " closures in 50 runs at n=1000"};
}

Outcome c10_threshold_trend() {
  const std::vector<Vertex> ns{500, 1000, 2000};
  const std::vector<double> cs{2.0, 2.4, 2.7, 3.0};
  ExperimentConfig base = base_config(500, 2.7, 110);
  base.trials = 100;
  const auto rows = sweep(ns, cs, base);
  std::map<std::pair<Vertex, double>, double> rate;
  std::ostringstream grid;
  for (const auto& r : rows) {
    rate[{r.n, r.c}] = r.success_rate();
    grid << " " << r.n << "/" << r.c << "=" << fmt(r.success_rate(), 3);
  }
  bool ok = true;
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    ok = ok && rate[{ns[i + 1], 2.7}] >= rate[{ns[i], 2.7}] - 0.05;
  }
  ok = ok && rate[{2000, 2.7}] >= 0.95;
  return {ok, "success rate at c=2.7 nondecreasing in n within 0.05 and >= 0.95 at n=2000;"
              " n/c=rate:" + grid.str()};
}

Outcome c11_uniformity() {
  const auto graphs = testing::enumerate_mindeg3(6, 9);
  std::map<std::uint64_t, std::int64_t> index;
  for (std::size_t i = 0; i < graphs.size(); ++i) index[graphs[i]] = static_cast<std::int64_t>(i);
  constexpr std::int64_t kSamples = 1'000'000;
  constexpr std::size_t kChunks = 20;
  std::vector<std::vector<std::int64_t>> counts(kChunks,
                                                std::vector<std::int64_t>(graphs.size(), 0));
  std::vector<std::int64_t> outside(kChunks, 0);
  parallel_for(kChunks, g_jobs, [&](std::size_t ci) {
    Rng rng = derive_stream(111, ci);
    for (std::int64_t s = 0; s < kSamples / static_cast<std::int64_t>(kChunks); ++s) {
      const auto it = index.find(testing::edge_mask(testing::random_mindeg3(6, 9, rng)));
      if (it == index.end()) {
        ++outside[ci];
      } else {
        ++counts[ci][static_cast<std::size_t>(it->second)];
      }
    }
  });
  std::vector<std::int64_t> total(graphs.size(), 0);
  std::int64_t out = 0;
  for (std::size_t ci = 0; ci < kChunks; ++ci) {
    out += outside[ci];
    for (std::size_t g = 0; g < graphs.size(); ++g) total[g] += counts[ci][g];
  }
  const double p = 1.0 / static_cast<double>(graphs.size());
  const double expected = kSamples * p;
  const double sigma = std::sqrt(kSamples * p * (1 - p));
  double worst = 0.0;
  for (const auto t : total) worst = std::max(worst, std::abs(static_cast<double>(t) - expected) / sigma);
  return {out == 0 && worst <= 5.0 && graphs.size() == 70,
          std::to_string(graphs.size()) + " graphs, max deviation " + fmt(worst, 3) +
              " sigma over 1e6 samples (gate 5), " + std::to_string(out) + " samples outside"};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> ids;
  app.add_option("ids", ids, "criteria to run (c01..c11), default all");
  app.add_option("--jobs", g_jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {"c01", "correctness gate", c01_correctness_gate},
      {"c02", "small-instance oracle agreement", c02_oracle_agreement},
      {"c03", "path-cover bound", c03_cover_bound},
      {"c04", "zeta trajectory bound", c04_zeta_bound},
      {"c05", "drift sign", c05_drift},
      {"c06", "degree-model fidelity", c06_degree_pmf},
      {"c07", "local CLT", c07_local_clt},
      {"c08", "simplicity probability", c08_simple_fraction},
      {"c09", "Posa invariant", c09_posa_invariant},
      {"c10", "threshold trend", c10_threshold_trend},
      {"c11", "exhaustive uniformity", c11_uniformity},
  };
  for (const auto& id : ids) {
    if (std::none_of(criteria.begin(), criteria.end(),
                     [&](const Criterion& c) { return id == c.id; })) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : criteria) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << c.id << (o.passed ? " PASS " : " FAIL ") << c.name << ": " << o.detail << std::endl;
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
