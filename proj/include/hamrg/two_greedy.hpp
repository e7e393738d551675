#pragma once

// 2GREEDY: grows a 2-matching by always serving a vertex that is about to run
// out of options (Z1, Y1, Y2) before touching the bulk (Z, Y). Every step is
// instrumented with the quantities used to analyze the algorithm.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hamrg/multigraph.hpp"
#include "hamrg/random.hpp"

namespace hamrg {

// Position of a vertex, determined by its degree in the current graph and its
// matching count b(v).
enum class VertexClass : std::uint8_t {
  V00,      // isolated and deleted, b = 0
  V01,      // isolated and deleted, b = 1
  Y1,       // degree 1, b = 0
  Y2,       // degree 2, b = 0
  Z1,       // degree 1, b = 1
  Y,        // degree >= 3, b = 0
  Z,        // degree >= 2, b = 1
  Matched,  // b = 2, deleted with its edges
};
inline constexpr std::size_t kVertexClassCount = 8;

struct TrajectoryRecord {
  std::int64_t i = 0;
  std::int64_t m = 0;     // edges of the current graph
  std::int64_t zeta = 0;  // |Y1| + 2|Y2| + |Z1|
  std::int64_t z2 = 0;
  std::int64_t y3 = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  std::optional<double> lambda;  // absent when the lambda equation is infeasible
  double p2 = 0.0;               // 2|Z2| / 2m
  double p3 = 0.0;               // 3|Y3| / 2m
  bool a = false;  // (z_j + y_j) lambda_j >= ln^3 n held at every j <= i
  bool b = false;  // lambda >= m^-0.2 or y >= m^0.8
  std::int64_t kappa1 = 0;  // deleted vertices with b <= 1 so far (V00 + V01)
  std::int64_t kappa2 = 0;  // cycles closed in the matching so far
};

struct StepInfo {
  Vertex v = -1;
  Vertex w = -1;
  bool urgent = false;  // chosen from Z1 u Y1 u Y2
  VertexClass w_class = VertexClass::Y;  // class of w before the step
  std::int64_t zeta_before = 0;
  std::int64_t zeta_after = 0;
};

struct TwoGreedyOptions {
  // Recompute every class from scratch after each step and throw
  // std::logic_error on a mismatch. Slow; meant for tests.
  bool validate_every_step = false;
  // Reject inputs with an alive vertex of degree below 3.
  bool require_min_degree3 = true;
};

class TwoGreedy {
 public:
  // Throws MinDegreeViolation if an alive vertex has degree below 3, unless
  // the option is cleared.
  explicit TwoGreedy(MultiGraph g, TwoGreedyOptions options = {});

  // One step. Throws EmptyGraph when no vertex is left.
  StepInfo step(Rng& rng);
  // Steps until at most ceil(n^{2/5}) vertices remain.
  void run(Rng& rng);

  std::int64_t stop_threshold() const { return stop_threshold_; }
  const MultiGraph& gamma() const { return gamma_; }
  const std::vector<Edge>& matching() const { return matching_; }
  const std::vector<TrajectoryRecord>& trajectory() const { return trajectory_; }
  VertexClass vertex_class(Vertex v) const { return class_[v]; }
  std::size_t class_size(VertexClass c) const { return sets_[static_cast<std::size_t>(c)].size(); }
  std::uint8_t b(Vertex v) const { return b_[v]; }
  std::int64_t zeta() const;

  // Full recomputation of every class, z2 and y3, compared to the incremental
  // bookkeeping.
  bool classes_consistent() const;

 private:
  VertexClass classify(Vertex v) const;
  void place(Vertex v);
  std::int32_t find(std::int32_t x);
  TrajectoryRecord snapshot();

  MultiGraph gamma_;
  TwoGreedyOptions options_;
  Vertex n_;
  std::int64_t stop_threshold_;
  double log3_n_;
  std::vector<std::uint8_t> b_;
  std::vector<VertexClass> class_;
  std::vector<std::int32_t> pos_;
  std::vector<std::int32_t> placed_degree_;
  std::array<std::vector<Vertex>, kVertexClassCount> sets_;
  std::int64_t z2_ = 0;
  std::int64_t y3_ = 0;
  std::vector<Edge> matching_;
  std::vector<std::int32_t> parent_;  // union-find over matching components
  std::int64_t kappa2_ = 0;
  bool a_running_ = true;
  std::int64_t step_ = 0;
  std::vector<TrajectoryRecord> trajectory_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_clock_ = 0;
};

struct TwoGreedyResult {
  std::vector<Edge> matching;
  std::vector<TrajectoryRecord> trajectory;
};

TwoGreedyResult run_two_greedy(const MultiGraph& g, Rng& rng, TwoGreedyOptions options = {});

struct MatchingComponent {
  std::vector<Vertex> vertices;  // in path or cycle order
  bool cycle = false;
};

struct MatchingComponents {
  std::int64_t kappa1 = 0;  // vertices of matching degree <= 1
  std::int64_t kappa2 = 0;  // cycles
  std::vector<MatchingComponent> components;
};

// Splits a 2-matching on vertices 0..n-1 into maximal paths (isolated
// vertices included) and cycles. Throws NotA2Matching if some vertex lies in
// three or more matching edges.
MatchingComponents matching_components(const std::vector<Edge>& matching, Vertex n);

}  // namespace hamrg
