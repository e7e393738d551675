#pragma once

// Random sequence model samplers: degree sequences conditioned on their sum,
// uniform pairings, G_{n,m} with minimum degree 3, and the (H, E2) instance
// generator (H uniform with cn - s edges, then s uniform non-edges).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hamrg/multigraph.hpp"
#include "hamrg/random.hpp"

namespace hamrg {

// The (J0, J2, J3; D) constraint structure. Vertices listed in no set get
// degree 0.
struct DegreePartition {
  Vertex n = 0;
  std::vector<std::pair<Vertex, std::int32_t>> j0;  // fixed degrees
  std::vector<Vertex> j2;                            // degree >= 2
  std::vector<Vertex> j3;                            // degree >= 3
  std::int64_t m = 0;                                // edge count M

  std::int64_t d_total() const;
  // 2M - D > 2|J2| + 3|J3|. The equality case is the lambda -> 0 limit and is
  // sampled as the point mass on minimal degrees.
  bool feasible() const;

  static DegreePartition all_j3(Vertex n, std::int64_t m);
};

struct DegreeSample {
  std::vector<std::int32_t> degrees;
  std::int64_t attempts = 0;  // independent draws until the sum matched
  double lambda = 0.0;        // 0 for the degenerate minimal-degree case
};

inline constexpr std::int64_t kDefaultDegreeAttempts = 1'000'000;

// Independent truncated Poissons (ell = 2 on J2, 3 on J3) at the lambda that
// makes their expected sum 2M - D, redrawn until the sum is exact.
DegreeSample sample_degree_sequence(const DegreePartition& partition, Rng& rng,
                                    std::int64_t max_attempts = kDefaultDegreeAttempts);

// Uniformly random arrangement of the multiset with vertex j repeated
// degrees[j] times. Throws OddTotal when the degree sum is odd.
std::vector<Vertex> sequence_from_degrees(std::span<const std::int32_t> degrees, Rng& rng);

struct SimplicityDiagnostic {
  double rho = 0.0;             // m2 / m, m2 = sum d(d-1)
  double mckay_estimate = 0.0;  // exp(-rho (rho + 1))
  // exp(-nu/2 - nu^2/4), nu = m2 / 2m: the usual configuration-model limit.
  double configuration_estimate = 0.0;
};

SimplicityDiagnostic simplicity_diagnostic(std::span<const std::int32_t> degrees);

// Repeated pairing attempts for one fixed degree sequence. Each attempt runs
// a forward Fisher-Yates shuffle two positions at a time and stops at the
// first loop or repeated pair, so an accepted attempt has the law of a full
// uniform pairing conditioned on being simple.
class PairingSampler {
 public:
  explicit PairingSampler(std::span<const std::int32_t> degrees);

  std::optional<MultiGraph> try_once(Rng& rng);

 private:
  Vertex n_;
  std::vector<Vertex> half_edges_;
  std::vector<std::int64_t> offset_;  // start of each vertex's slice in seen_
  std::vector<std::int32_t> filled_;
  std::vector<Vertex> seen_;
};

enum class SimpleSampling {
  // Redraw degrees and pairing on every rejection: uniform over G_{n,m}^{d>=3}.
  Exact,
  // Draw degrees once, redraw only the pairing. Uniform given the degree
  // sequence; the only feasible choice once the simple fraction drops to 1e-4.
  GivenDegrees,
};

struct SamplerOptions {
  SimpleSampling mode = SimpleSampling::Exact;
  std::int64_t max_rejects = 10'000'000;
  std::int64_t max_degree_attempts = kDefaultDegreeAttempts;
};

struct GnmSample {
  MultiGraph graph;
  std::int64_t rejections = 0;       // non-simple pairings discarded
  std::int64_t degree_attempts = 0;  // summed over all degree draws
  SimplicityDiagnostic diagnostic;   // of the accepted degree sequence
};

// Uniform simple graph with n vertices, m edges and minimum degree 3 (exactly
// so in Exact mode). Requires 2m >= 3n.
GnmSample sample_gnm_mindeg3(Vertex n, std::int64_t m, Rng& rng,
                             const SamplerOptions& options = {});

struct Instance {
  Vertex n = 0;
  double c = 0.0;
  std::int64_t s = 0;
  MultiGraph e1;           // H
  std::vector<Edge> e2;    // reserve edges in reveal order
  std::int64_t rejections = 0;
  std::int64_t degree_attempts = 0;
  double rho = 0.0;
};

// max(1, floor(sqrt(n) / ln^2 n)).
std::int64_t default_reserve_size(Vertex n);

// H from sample_gnm_mindeg3(n, floor(cn) - s), then s distinct uniform
// non-edges of H drawn sequentially without replacement. s is clamped to the
// number of non-edges.
Instance sample_instance_method_b(Vertex n, double c, std::optional<std::int64_t> s_override,
                                  Rng& rng, const SamplerOptions& options = {});

}  // namespace hamrg
