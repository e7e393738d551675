#pragma once

// Experiment pipeline: sample an instance, run 2GREEDY on E1, turn the
// 2-matching into a merged path cover, check P1, run the rotation engine with
// the reserve E2 and verify whatever cycle comes out.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamrg/multigraph.hpp"
#include "hamrg/random.hpp"
#include "hamrg/seq_model.hpp"
#include "hamrg/two_greedy.hpp"

namespace hamrg {

struct ExperimentConfig {
  Vertex n = 1000;
  double c = 2.7;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
  double beta = 0.99;
  double epsilon = 1e-5;
  std::optional<std::int64_t> s_override;
  std::string out;  // CSV path, empty for none
  int jobs = 1;
  SimpleSampling sampler = SimpleSampling::GivenDegrees;
  std::int64_t max_rejects = 10'000'000;
  bool record_timing = true;     // ms_elapsed column; off gives reproducible bytes
  bool check_invariants = false;  // closure and cycle audits in the rotation engine

  // Throws std::invalid_argument for out-of-range fields and InfeasibleTarget
  // when floor(cn) - s < 3n/2.
  void validate() const;
};

struct RunRecord {
  Vertex n = 0;
  double c = 0.0;
  std::uint64_t seed = 0;
  std::int64_t trial = 0;
  bool success = false;
  std::int64_t rounds = 0;
  std::int64_t reveals = 0;
  std::int64_t cover_size = 0;  // after merging
  std::int64_t zeta_max = 0;    // max zeta_i over i < tau
  std::int64_t kappa = 0;       // components of the 2-matching
  bool p1_ok = false;
  double ms_elapsed = 0.0;
  std::int64_t tau = 0;  // first i with m_i <= n^{0.4 + 2 epsilon}
  std::int64_t kappa1 = 0;
  std::int64_t kappa2 = 0;
  std::string failure;  // reserve_exhausted | p1_fail | sampler_retry_limit | error

  // Not written to CSV.
  std::int64_t s = 0;
  std::int64_t cover_before_merge = 0;
  std::int64_t posa_violations = 0;
  std::int64_t cycle_violations = 0;
  std::int64_t closures = 0;
  std::vector<std::size_t> end_sizes;
  bool verified = false;
  std::string error;
};

struct TrajectoryStats {
  std::int64_t tau = 0;
  std::int64_t zeta_max = 0;
};

// tau is the number of steps if m_i never drops to the threshold.
TrajectoryStats trajectory_stats(const std::vector<TrajectoryRecord>& trajectory,
                                 std::int64_t m0, Vertex n, double epsilon);

struct PipelineArtifacts {
  RunRecord record;
  std::vector<TrajectoryRecord> trajectory;
  std::vector<Edge> matching;
  std::vector<std::vector<Vertex>> cover;
  std::vector<Vertex> cycle;
};

// Everything after instance generation, on a given E1 and E2.
PipelineArtifacts run_on_instance(const MultiGraph& e1, const std::vector<Edge>& e2,
                                  const ExperimentConfig& config, Rng& rng);

// One trial with its own stream derive_stream(config.seed, trial).
PipelineArtifacts run_trial(const ExperimentConfig& config, std::int64_t trial);

std::vector<RunRecord> run_pipeline(const ExperimentConfig& config);

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records,
                       bool record_timing);
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& trajectory);

struct SweepRow {
  Vertex n = 0;
  double c = 0.0;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  std::int64_t reserve_exhausted = 0;
  std::int64_t p1_fail = 0;
  std::int64_t sampler_retry_limit = 0;
  std::int64_t errors = 0;
  double mean_cover_size = 0.0;
  double mean_reveals = 0.0;

  double success_rate() const {
    return trials > 0 ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  }
};

// One row per (n, c); cell k of the grid uses seed derive_stream(seed, k)().
std::vector<SweepRow> sweep(const std::vector<Vertex>& n_list, const std::vector<double>& c_list,
                            const ExperimentConfig& base);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ModelCheck {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  std::string detail;
};

struct ModelReport {
  std::vector<ModelCheck> checks;
  bool all_passed() const;
};

// Statistical checks of the degree sampler and the truncated Poisson
// formulas on all-J3 partitions with M = floor(cn).
ModelReport check_model(Vertex n, double c, std::int64_t samples, std::uint64_t seed, int jobs = 1);
void write_model_report(std::ostream& out, const ModelReport& report);

}  // namespace hamrg
