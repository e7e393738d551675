#include "hamrg/multigraph.hpp"

#include <string>

#include "hamrg/error.hpp"

namespace hamrg {

MultiGraph::MultiGraph(Vertex n)
    : incidence_(static_cast<std::size_t>(n)), alive_(static_cast<std::size_t>(n), true),
      alive_count_(n) {}

MultiGraph MultiGraph::from_pairing(Vertex n, std::span<const Vertex> sequence) {
  if (sequence.size() % 2 != 0) {
    throw IndexOutOfRange("pairing sequence has odd length " +
                          std::to_string(sequence.size()));
  }
  MultiGraph g(n);
  g.edges_.reserve(sequence.size() / 2);
  for (std::size_t i = 0; i < sequence.size(); i += 2) {
    g.add_edge(sequence[i], sequence[i + 1]);
  }
  return g;
}

MultiGraph MultiGraph::from_edges(Vertex n, std::span<const Edge> edges) {
  MultiGraph g(n);
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void MultiGraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count()) {
    throw IndexOutOfRange("vertex " + std::to_string(v) + " not in 0.." +
                          std::to_string(vertex_count() - 1));
  }
}

EdgeId MultiGraph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (!alive_[u] || !alive_[v]) throw DeadVertex("cannot attach an edge to a dead vertex");
  const auto e = static_cast<EdgeId>(edges_.size());
  EdgeRecord rec{{u, v}, {0, 0}, true};
  rec.slot[0] = static_cast<std::int32_t>(incidence_[u].size());
  incidence_[u].push_back(2 * e);
  rec.slot[1] = static_cast<std::int32_t>(incidence_[v].size());
  incidence_[v].push_back(2 * e + 1);
  edges_.push_back(rec);
  ++edge_count_;
  return e;
}

void MultiGraph::detach_half(std::int32_t h) {
  EdgeRecord& rec = edges_[h >> 1];
  const Vertex owner = rec.ends[h & 1];
  auto& list = incidence_[owner];
  const std::int32_t slot = rec.slot[h & 1];
  const std::int32_t moved = list.back();
  list[slot] = moved;
  edges_[moved >> 1].slot[moved & 1] = slot;
  list.pop_back();
}

void MultiGraph::remove_edge(EdgeId e) {
  if (e < 0 || e >= static_cast<EdgeId>(edges_.size()) || !edges_[e].alive) {
    throw IndexOutOfRange("edge " + std::to_string(e) + " is not a live edge");
  }
  detach_half(2 * e);
  detach_half(2 * e + 1);
  edges_[e].alive = false;
  --edge_count_;
}

void MultiGraph::remove_vertex(Vertex v) {
  check_vertex(v);
  if (!alive_[v]) throw DeadVertex("vertex " + std::to_string(v) + " already removed");
  while (!incidence_[v].empty()) remove_edge(incidence_[v].back() >> 1);
  alive_[v] = false;
  --alive_count_;
}

void MultiGraph::retire_isolated(Vertex v) {
  check_vertex(v);
  if (!alive_[v]) throw DeadVertex("vertex " + std::to_string(v) + " already removed");
  if (!incidence_[v].empty()) {
    throw IndexOutOfRange("vertex " + std::to_string(v) + " is not isolated");
  }
  alive_[v] = false;
  --alive_count_;
}

std::vector<HalfEdge> MultiGraph::incident(Vertex v) const {
  check_vertex(v);
  std::vector<HalfEdge> out;
  out.reserve(incidence_[v].size());
  for (const std::int32_t h : incidence_[v]) out.push_back({h >> 1, half_neighbor(h)});
  return out;
}

std::vector<Vertex> MultiGraph::neighbors_with_multiplicity(Vertex v) const {
  check_vertex(v);
  if (!alive_[v]) throw DeadVertex("vertex " + std::to_string(v) + " is dead");
  std::vector<Vertex> out;
  out.reserve(incidence_[v].size());
  for (const std::int32_t h : incidence_[v]) out.push_back(half_neighbor(h));
  return out;
}

HalfEdge MultiGraph::random_incident_edge(Vertex v, Rng& rng) const {
  check_vertex(v);
  if (!alive_[v]) throw DeadVertex("vertex " + std::to_string(v) + " is dead");
  const auto& list = incidence_[v];
  if (list.empty()) throw IsolatedVertex("vertex " + std::to_string(v) + " has no edges");
  const std::int32_t h = list[uniform_below<std::size_t>(rng, list.size())];
  return {h >> 1, half_neighbor(h)};
}

bool MultiGraph::is_simple() const {
  std::vector<Vertex> mark(alive_.size(), -1);
  for (Vertex v = 0; v < vertex_count(); ++v) {
    for (const std::int32_t h : incidence_[v]) {
      const Vertex w = half_neighbor(h);
      if (w == v || mark[w] == v) return false;
      mark[w] = v;
    }
  }
  return true;
}

std::vector<Edge> MultiGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (const EdgeRecord& rec : edges_) {
    if (rec.alive) out.emplace_back(rec.ends[0], rec.ends[1]);
  }
  return out;
}

std::int64_t MultiGraph::degree_sum() const {
  std::int64_t total = 0;
  for (const auto& list : incidence_) total += static_cast<std::int64_t>(list.size());
  return total;
}

}  // namespace hamrg
