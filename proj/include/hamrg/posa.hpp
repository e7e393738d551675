#pragma once

// Extension-rotation engine. A path cover is closed into a cycle with
// synthetic connecting edges R, and each round replaces one synthetic edge by
// rotating Hamilton paths until their ends can be joined by an edge of
// E1 u F, revealing reserve edges from E2 in order when the existing edges do
// not suffice.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamrg/multigraph.hpp"
#include "hamrg/path_cover.hpp"

namespace hamrg {

// Neighbor lists with multiplicity.
using Adjacency = std::vector<std::vector<Vertex>>;

Adjacency adjacency_of(const MultiGraph& g);

struct InitialCycle {
  std::vector<Vertex> cycle;  // paths concatenated end to start
  std::vector<Edge> r_edges;  // connecting pairs absent from e1, in cycle order
};

// Throws EmptyCover for a cover without paths.
InitialCycle initial_cycle(const PathCover& cover, const MultiGraph& e1);

// Rotation of path x_0..x_{L-1} with fixed end x_0 along edge {x_{L-1}, x_p},
// 1 <= p <= L-3: returns x_0..x_p, x_{L-1}, x_{L-2}, .., x_{p+1}. Throws
// InvalidRotation otherwise.
std::vector<Vertex> rotate(std::span<const Vertex> path, Edge rotating_edge);

// All ends reachable from a Hamilton path by rotations with path[0] fixed.
// Each reachable path is stored as a chain of suffix reversals of the base
// path, so lookups cost O(depth) and reconstruction O(n depth).
class RotationClosure {
 public:
  struct Node {
    Vertex end;
    std::int32_t parent;  // -1 at the root
    std::int32_t pivot;   // position p of the rotating neighbor in the parent path
    std::int32_t depth;
  };

  RotationClosure(std::vector<Vertex> base, const Adjacency& allowed);

  Vertex fixed_end() const { return base_.front(); }
  const std::vector<Node>& nodes() const { return nodes_; }  // discovery order
  std::size_t size() const { return nodes_.size(); }
  bool contains(Vertex v) const { return node_of_[v] >= 0; }
  std::vector<Vertex> end_set() const;
  // Rotated Hamilton path from the fixed end to `end`.
  std::vector<Vertex> path_to(Vertex end) const;

 private:
  void chain(std::int32_t node, std::vector<std::int32_t>& pivots) const;

  std::vector<Vertex> base_;
  std::vector<std::int32_t> base_pos_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> node_of_;
};

RotationClosure compute_closure(std::span<const Vertex> path, const Adjacency& allowed);

// |N(END)| where N excludes END itself and the fixed end.
std::size_t closure_neighborhood(const RotationClosure& closure, const Adjacency& allowed);
inline bool posa_inequality_holds(const RotationClosure& closure, const Adjacency& allowed) {
  return closure_neighborhood(closure, allowed) < 2 * closure.size();
}

enum class RoundStatus {
  Vacuous,          // no synthetic edge left
  ClosedFirst,      // fixed end x1 joined to an end of its closure
  ClosedSecond,     // some z joined to an end of its own closure
  ClosedReveal,     // a reserve edge closed the cycle
  ReserveExhausted,
};

const char* round_status_name(RoundStatus s);

struct RoundOutcome {
  RoundStatus status = RoundStatus::Vacuous;
  std::int64_t reveals = 0;
  std::size_t end_size = 0;  // |END(Q1, x1)|
  std::int64_t closures = 0;
};

struct PosaOptions {
  // Check the closure neighborhood bound and the current cycle after every
  // round; violations are counted, never thrown.
  bool check_invariants = false;
};

struct HamiltonResult {
  bool success = false;
  std::vector<Vertex> cycle;
  std::int64_t rounds = 0;
  std::int64_t reveals = 0;
  std::int64_t initial_r = 0;
  std::int64_t closures = 0;
  std::vector<std::size_t> end_sizes;  // per round
  std::int64_t posa_violations = 0;
  std::int64_t cycle_violations = 0;
  std::string failure;  // empty on success
};

class PosaEngine {
 public:
  PosaEngine(const MultiGraph& e1, std::span<const Edge> e2, const PathCover& cover,
             PosaOptions options = {});

  RoundOutcome run_round();
  HamiltonResult run_all();

  const std::vector<Vertex>& cycle() const { return cycle_; }
  std::size_t remaining_r() const;
  std::size_t cursor() const { return cursor_; }
  const std::vector<Edge>& revealed() const { return f_edges_; }
  // Current Gamma = E1 u R u F as a multigraph.
  MultiGraph gamma() const;

 private:
  Adjacency build_allowed(std::int32_t skip_r) const;
  void finish_round(std::int32_t removed, std::vector<Vertex> cycle,
                    std::vector<Edge>& revealed_now);

  const MultiGraph& e1_;
  std::span<const Edge> e2_;
  PosaOptions options_;
  Adjacency e1_adj_;
  std::vector<Edge> r_edges_;
  std::vector<char> r_alive_;
  std::vector<Edge> f_edges_;
  std::size_t cursor_ = 0;
  std::vector<Vertex> cycle_;
  HamiltonResult stats_;
};

HamiltonResult run_all(const PathCover& cover, const MultiGraph& e1, std::span<const Edge> e2,
                       PosaOptions options = {});

// True iff `cycle` lists every vertex of g once and consecutive pairs
// (with wraparound) are edges. Needs at least three vertices.
bool verify_cycle(const MultiGraph& g, std::span<const Vertex> cycle);
bool verify_cycle(const MultiGraph& e1, std::span<const Edge> extra,
                  std::span<const Vertex> cycle);

}  // namespace hamrg
