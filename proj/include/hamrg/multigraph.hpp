#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hamrg/random.hpp"

namespace hamrg {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

// Unordered vertex pair, stored with u <= v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool is_loop() const { return u == v; }
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// One end of an incident edge, as seen from a vertex.
struct HalfEdge {
  EdgeId edge = -1;
  Vertex neighbor = -1;
};

// Mutable multigraph on vertices 0..n-1 with loops and parallel edges.
// Incidence is stored per half-edge, so a loop appears twice in its vertex's
// list and counts 2 toward the degree. Edge and vertex removal are O(1) per
// removed half-edge; vertices are never renumbered.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(Vertex n);

  // Edge i joins sequence[2i] and sequence[2i+1].
  static MultiGraph from_pairing(Vertex n, std::span<const Vertex> sequence);
  static MultiGraph from_edges(Vertex n, std::span<const Edge> edges);

  Vertex vertex_count() const { return static_cast<Vertex>(alive_.size()); }
  Vertex alive_count() const { return alive_count_; }
  std::int64_t edge_count() const { return edge_count_; }

  bool alive(Vertex v) const { return alive_[v]; }
  std::int32_t degree(Vertex v) const {
    return static_cast<std::int32_t>(incidence_[v].size());
  }

  EdgeId add_edge(Vertex u, Vertex v);
  void remove_edge(EdgeId e);
  // Removes all incident edges, then marks v dead.
  void remove_vertex(Vertex v);
  // Marks an isolated vertex dead.
  void retire_isolated(Vertex v);

  bool edge_alive(EdgeId e) const { return edges_[e].alive; }
  Edge edge(EdgeId e) const { return Edge(edges_[e].ends[0], edges_[e].ends[1]); }

  // Incident half-edges of v; order changes as edges are removed.
  std::vector<HalfEdge> incident(Vertex v) const;
  // Neighbors listed once per half-edge (a loop lists v twice).
  std::vector<Vertex> neighbors_with_multiplicity(Vertex v) const;
  // A uniformly random half-edge at v, i.e. a neighbor chosen proportionally
  // to edge multiplicity with loops counted twice.
  HalfEdge random_incident_edge(Vertex v, Rng& rng) const;
  Vertex random_incident_half_edge(Vertex v, Rng& rng) const {
    return random_incident_edge(v, rng).neighbor;
  }

  // Calls fn(neighbor) for each half-edge at v without allocating.
  template <typename Fn>
  void for_each_neighbor(Vertex v, Fn&& fn) const {
    for (const std::int32_t h : incidence_[v]) fn(half_neighbor(h));
  }

  bool is_simple() const;
  // Live edges in id order.
  std::vector<Edge> edges() const;
  // Sum of degrees over all vertices.
  std::int64_t degree_sum() const;

 private:
  struct EdgeRecord {
    Vertex ends[2];
    std::int32_t slot[2];  // position of each half-edge in its incidence list
    bool alive;
  };

  Vertex half_neighbor(std::int32_t h) const { return edges_[h >> 1].ends[(h & 1) ^ 1]; }
  void check_vertex(Vertex v) const;
  void detach_half(std::int32_t h);

  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<std::int32_t>> incidence_;  // half-edge ids 2e, 2e+1
  std::vector<bool> alive_;
  Vertex alive_count_ = 0;
  std::int64_t edge_count_ = 0;
};

}  // namespace hamrg
