#include "hamrg/posa.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hamrg/error.hpp"

namespace hamrg {

Adjacency adjacency_of(const MultiGraph& g) {
  Adjacency adj(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.alive(v)) continue;
    adj[v].reserve(static_cast<std::size_t>(g.degree(v)));
    g.for_each_neighbor(v, [&](Vertex w) { adj[v].push_back(w); });
  }
  return adj;
}

namespace {

bool adjacent(const MultiGraph& g, Vertex a, Vertex b) {
  if (!g.alive(a) || !g.alive(b)) return false;
  bool found = false;
  g.for_each_neighbor(a, [&](Vertex w) { found = found || w == b; });
  return found;
}

}  // namespace

InitialCycle initial_cycle(const PathCover& cover, const MultiGraph& e1) {
  if (cover.size() == 0) throw EmptyCover("cover has no paths");
  InitialCycle out;
  const auto& paths = cover.paths();
  for (const auto& p : paths) out.cycle.insert(out.cycle.end(), p.begin(), p.end());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Vertex a = paths[i].back();
    const Vertex b = paths[(i + 1) % paths.size()].front();
    if (a == b || adjacent(e1, a, b)) continue;
    out.r_edges.emplace_back(a, b);
  }
  return out;
}

std::vector<Vertex> rotate(std::span<const Vertex> path, Edge rotating_edge) {
  const auto len = static_cast<std::int64_t>(path.size());
  if (len < 4) throw InvalidRotation("path too short to rotate");
  const Vertex last = path.back();
  if (rotating_edge.u != last && rotating_edge.v != last) {
    throw InvalidRotation("edge does not meet the last vertex");
  }
  const Vertex x = rotating_edge.other(last);
  const auto it = std::find(path.begin(), path.end(), x);
  const std::int64_t p = it - path.begin();
  if (it == path.end() || p < 1 || p > len - 3) {
    throw InvalidRotation("rotating neighbor at position " + std::to_string(p) +
                          " of a path of length " + std::to_string(len));
  }
  std::vector<Vertex> out(path.begin(), path.end());
  std::reverse(out.begin() + p + 1, out.end());
  return out;
}

RotationClosure::RotationClosure(std::vector<Vertex> base, const Adjacency& allowed)
    : base_(std::move(base)) {
  const auto n = allowed.size();
  const auto len = static_cast<std::int32_t>(base_.size());
  base_pos_.assign(n, -1);
  node_of_.assign(n, -1);
  for (std::int32_t i = 0; i < len; ++i) base_pos_[base_[i]] = i;
  if (len < 2) return;
  nodes_.push_back({base_.back(), -1, 0, 0});
  node_of_[base_.back()] = 0;

  std::vector<std::int32_t> pivots;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    chain(static_cast<std::int32_t>(k), pivots);
    const Vertex end = nodes_[k].end;
    for (const Vertex w : allowed[end]) {
      std::int32_t p = base_pos_[w];
      if (w == end || p < 0) continue;
      for (const std::int32_t a : pivots) {
        if (p > a) p = a + len - p;
      }
      if (p < 1 || p > len - 3) continue;
      std::int32_t r = p + 1;
      for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        if (r > *it) r = *it + len - r;
      }
      const Vertex next = base_[r];
      if (node_of_[next] >= 0) continue;
      node_of_[next] = static_cast<std::int32_t>(nodes_.size());
      nodes_.push_back({next, static_cast<std::int32_t>(k), p, nodes_[k].depth + 1});
    }
  }
}

void RotationClosure::chain(std::int32_t node, std::vector<std::int32_t>& pivots) const {
  pivots.clear();
  for (std::int32_t k = node; nodes_[k].parent >= 0; k = nodes_[k].parent) {
    pivots.push_back(nodes_[k].pivot);
  }
  std::reverse(pivots.begin(), pivots.end());
}

std::vector<Vertex> RotationClosure::end_set() const {
  std::vector<Vertex> out;
  out.reserve(nodes_.size());
  for (const auto& nd : nodes_) out.push_back(nd.end);
  return out;
}

std::vector<Vertex> RotationClosure::path_to(Vertex end) const {
  if (end < 0 || static_cast<std::size_t>(end) >= node_of_.size() || node_of_[end] < 0) {
    throw IndexOutOfRange("vertex " + std::to_string(end) + " is not a reachable end");
  }
  std::vector<std::int32_t> pivots;
  chain(node_of_[end], pivots);
  std::vector<Vertex> path = base_;
  for (const std::int32_t a : pivots) std::reverse(path.begin() + a + 1, path.end());
  return path;
}

RotationClosure compute_closure(std::span<const Vertex> path, const Adjacency& allowed) {
  return RotationClosure(std::vector<Vertex>(path.begin(), path.end()), allowed);
}

std::size_t closure_neighborhood(const RotationClosure& closure, const Adjacency& allowed) {
  std::vector<char> mark(allowed.size(), 0);
  for (const auto& nd : closure.nodes()) mark[nd.end] = 1;
  mark[closure.fixed_end()] = 1;
  std::size_t count = 0;
  for (const auto& nd : closure.nodes()) {
    for (const Vertex w : allowed[nd.end]) {
      if (!mark[w]) {
        mark[w] = 2;
        ++count;
      }
    }
  }
  return count;
}

const char* round_status_name(RoundStatus s) {
  switch (s) {
    case RoundStatus::Vacuous: return "vacuous";
    case RoundStatus::ClosedFirst: return "closed_first";
    case RoundStatus::ClosedSecond: return "closed_second";
    case RoundStatus::ClosedReveal: return "closed_reveal";
    case RoundStatus::ReserveExhausted: return "reserve_exhausted";
  }
  return "unknown";
}

PosaEngine::PosaEngine(const MultiGraph& e1, std::span<const Edge> e2, const PathCover& cover,
                       PosaOptions options)
    : e1_(e1), e2_(e2), options_(options), e1_adj_(adjacency_of(e1)) {
  if (cover.vertex_count() != e1.vertex_count()) {
    throw IndexOutOfRange("cover and graph disagree on n");
  }
  InitialCycle init = initial_cycle(cover, e1);
  cycle_ = std::move(init.cycle);
  r_edges_ = std::move(init.r_edges);
  r_alive_.assign(r_edges_.size(), 1);
  stats_.initial_r = static_cast<std::int64_t>(r_edges_.size());
}

std::size_t PosaEngine::remaining_r() const {
  return static_cast<std::size_t>(std::count(r_alive_.begin(), r_alive_.end(), 1));
}

Adjacency PosaEngine::build_allowed(std::int32_t skip_r) const {
  Adjacency adj = e1_adj_;
  auto add = [&](const Edge& e) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  };
  for (std::size_t i = 0; i < r_edges_.size(); ++i) {
    if (r_alive_[i] && static_cast<std::int32_t>(i) != skip_r) add(r_edges_[i]);
  }
  for (const Edge& e : f_edges_) add(e);
  return adj;
}

MultiGraph PosaEngine::gamma() const {
  MultiGraph g = e1_;
  for (std::size_t i = 0; i < r_edges_.size(); ++i) {
    if (r_alive_[i]) g.add_edge(r_edges_[i].u, r_edges_[i].v);
  }
  for (const Edge& e : f_edges_) g.add_edge(e.u, e.v);
  return g;
}

void PosaEngine::finish_round(std::int32_t removed, std::vector<Vertex> cycle,
                              std::vector<Edge>& revealed_now) {
  cycle_ = std::move(cycle);
  f_edges_.insert(f_edges_.end(), revealed_now.begin(), revealed_now.end());
  revealed_now.clear();
  r_alive_[removed] = 0;

  const auto n = static_cast<std::int64_t>(cycle_.size());
  std::vector<std::int64_t> pos(e1_adj_.size(), -1);
  for (std::int64_t i = 0; i < n; ++i) pos[cycle_[i]] = i;
  std::unordered_set<std::uint64_t> f_keys;
  for (const Edge& e : f_edges_) f_keys.insert(e.key());
  for (std::size_t i = 0; i < r_edges_.size(); ++i) {
    if (!r_alive_[i]) continue;
    const Edge& r = r_edges_[i];
    const std::int64_t gap = std::abs(pos[r.u] - pos[r.v]);
    const bool on_cycle = gap == 1 || gap == n - 1;
    if (!on_cycle || f_keys.contains(r.key()) || adjacent(e1_, r.u, r.v)) r_alive_[i] = 0;
  }
  if (options_.check_invariants && !verify_cycle(gamma(), cycle_)) ++stats_.cycle_violations;
}

RoundOutcome PosaEngine::run_round() {
  RoundOutcome out;
  std::int32_t idx = -1;
  for (std::size_t i = 0; i < r_alive_.size(); ++i) {
    if (r_alive_[i]) {
      idx = static_cast<std::int32_t>(i);
      break;
    }
  }
  if (idx < 0) return out;

  const Adjacency adj = build_allowed(idx);
  const Edge e = r_edges_[idx];
  const auto n = cycle_.size();
  std::size_t k = 0;
  while (k < n && Edge(cycle_[k], cycle_[(k + 1) % n]) != e) ++k;
  if (k == n) throw std::logic_error("synthetic edge is not on the current cycle");

  std::vector<Vertex> q1(n);
  for (std::size_t i = 0; i < n; ++i) q1[i] = cycle_[(k + 1 + i) % n];
  const Vertex x1 = q1.front();
  const RotationClosure c1(std::move(q1), adj);
  out.end_size = c1.size();
  out.closures = 1;
  stats_.end_sizes.push_back(c1.size());
  auto audit = [&](const RotationClosure& c) {
    if (options_.check_invariants && !posa_inequality_holds(c, adj)) ++stats_.posa_violations;
  };
  audit(c1);

  std::vector<Edge> revealed_now;
  auto close = [&](RoundStatus status, std::vector<Vertex> path) {
    finish_round(idx, std::move(path), revealed_now);
    out.status = status;
    ++stats_.rounds;
    stats_.reveals += out.reveals;
    stats_.closures += out.closures;
    return out;
  };

  for (const Vertex y : adj[x1]) {
    if (c1.contains(y)) return close(RoundStatus::ClosedFirst, c1.path_to(y));
  }

  // END sets of the second-stage closures, kept for the reveal stage while
  // they fit in a fixed budget.
  constexpr std::size_t kCacheBudget = 20'000'000;
  std::size_t cached = 0;
  std::unordered_map<Vertex, std::vector<Vertex>> end_cache;
  auto closure_for = [&](Vertex z) {
    std::vector<Vertex> qz = c1.path_to(z);
    std::reverse(qz.begin(), qz.end());
    ++out.closures;
    return RotationClosure(std::move(qz), adj);
  };

  for (const auto& nd : c1.nodes()) {
    const Vertex z = nd.end;
    const RotationClosure cz = closure_for(z);
    audit(cz);
    for (const Vertex y : adj[z]) {
      if (cz.contains(y)) return close(RoundStatus::ClosedSecond, cz.path_to(y));
    }
    if (cached + cz.size() <= kCacheBudget) {
      std::vector<Vertex> ends = cz.end_set();
      std::sort(ends.begin(), ends.end());
      cached += ends.size();
      end_cache.emplace(z, std::move(ends));
    }
  }

  while (cursor_ < e2_.size()) {
    const Edge f = e2_[cursor_++];
    revealed_now.push_back(f);
    ++out.reveals;
    for (const auto& [z, y] : {std::pair{f.u, f.v}, std::pair{f.v, f.u}}) {
      if (z == y) break;
      if (z == x1) {
        if (c1.contains(y)) return close(RoundStatus::ClosedReveal, c1.path_to(y));
        continue;
      }
      if (!c1.contains(z)) continue;
      const auto hit = end_cache.find(z);
      if (hit != end_cache.end() &&
          !std::binary_search(hit->second.begin(), hit->second.end(), y)) {
        continue;
      }
      const RotationClosure cz = closure_for(z);
      if (cz.contains(y)) return close(RoundStatus::ClosedReveal, cz.path_to(y));
    }
  }

  f_edges_.insert(f_edges_.end(), revealed_now.begin(), revealed_now.end());
  stats_.reveals += out.reveals;
  stats_.closures += out.closures;
  out.status = RoundStatus::ReserveExhausted;
  return out;
}

HamiltonResult PosaEngine::run_all() {
  if (cycle_.size() < 3) {
    stats_.failure = "too_few_vertices";
    return stats_;
  }
  for (;;) {
    const RoundOutcome o = run_round();
    if (o.status == RoundStatus::Vacuous) break;
    if (o.status == RoundStatus::ReserveExhausted) {
      stats_.failure = "reserve_exhausted";
      return stats_;
    }
  }
  stats_.success = true;
  stats_.cycle = cycle_;
  return stats_;
}

HamiltonResult run_all(const PathCover& cover, const MultiGraph& e1, std::span<const Edge> e2,
                       PosaOptions options) {
  PosaEngine engine(e1, e2, cover, options);
  return engine.run_all();
}

bool verify_cycle(const MultiGraph& g, std::span<const Vertex> cycle) {
  const Vertex n = g.vertex_count();
  if (n < 3 || cycle.size() != static_cast<std::size_t>(n)) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const Vertex v : cycle) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (!adjacent(g, cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  }
  return true;
}

bool verify_cycle(const MultiGraph& e1, std::span<const Edge> extra,
                  std::span<const Vertex> cycle) {
  MultiGraph g = e1;
  for (const Edge& e : extra) g.add_edge(e.u, e.v);
  return verify_cycle(g, cycle);
}

}  // namespace hamrg
