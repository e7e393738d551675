#include "hamrg/path_cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_set>

#include "hamrg/error.hpp"
#include "hamrg/two_greedy.hpp"

namespace hamrg {

PathCover::PathCover(Vertex n, std::vector<std::vector<Vertex>> paths)
    : paths_(std::move(paths)), ends_(static_cast<std::size_t>(n)) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::size_t covered = 0;
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    const auto& path = paths_[p];
    if (path.empty()) throw IndexOutOfRange("empty path in cover");
    for (const Vertex v : path) {
      if (v < 0 || v >= n) throw IndexOutOfRange("cover vertex " + std::to_string(v));
      if (seen[v]) throw IndexOutOfRange("vertex " + std::to_string(v) + " covered twice");
      seen[v] = 1;
      ++covered;
    }
    const auto id = static_cast<std::int32_t>(p);
    if (path.size() == 1) {
      ends_[path[0]] = {id, PathSide::Both};
    } else {
      ends_[path.front()] = {id, PathSide::Front};
      ends_[path.back()] = {id, PathSide::Back};
    }
  }
  if (covered != static_cast<std::size_t>(n)) throw IndexOutOfRange("cover misses vertices");
}

bool PathCover::edges_in(const MultiGraph& g) const {
  std::unordered_set<std::uint64_t> keys;
  for (const Edge& e : g.edges()) keys.insert(e.key());
  for (const auto& path : paths_) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!keys.contains(Edge(path[i], path[i + 1]).key())) return false;
    }
  }
  return true;
}

namespace {

using Links = std::vector<std::array<Vertex, 2>>;

int link_degree(const std::array<Vertex, 2>& l) { return (l[0] >= 0) + (l[1] >= 0); }

void add_link(Links& links, Vertex a, Vertex b) {
  links[a][links[a][0] >= 0 ? 1 : 0] = b;
  links[b][links[b][0] >= 0 ? 1 : 0] = a;
}

// Canonical path list from an acyclic link structure of maximum degree 2.
PathCover extract(Vertex n, const Links& links) {
  std::vector<std::vector<Vertex>> nontrivial;
  std::vector<std::vector<Vertex>> singles;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v]) continue;
    const int d = link_degree(links[v]);
    if (d == 0) {
      seen[v] = 1;
      singles.push_back({v});
    } else if (d == 1) {
      std::vector<Vertex> path{v};
      seen[v] = 1;
      Vertex prev = -1;
      Vertex cur = v;
      for (;;) {
        const auto& l = links[cur];
        const Vertex next = l[0] >= 0 && l[0] != prev ? l[0] : l[1];
        if (next < 0 || next == prev) break;
        prev = cur;
        cur = next;
        seen[cur] = 1;
        path.push_back(cur);
      }
      nontrivial.push_back(std::move(path));
    }
  }
  for (auto& s : singles) nontrivial.push_back(std::move(s));
  return PathCover(n, std::move(nontrivial));
}

}  // namespace

PathCover cover_from_matching(const std::vector<Edge>& matching, Vertex n) {
  const MatchingComponents comps = matching_components(matching, n);
  std::unordered_set<std::uint64_t> drop;
  for (const auto& comp : comps.components) {
    if (!comp.cycle) continue;
    const auto& c = comp.vertices;
    Edge smallest(c.back(), c.front());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) smallest = std::min(smallest, Edge(c[i], c[i + 1]));
    drop.insert(smallest.key());
  }
  Links links(static_cast<std::size_t>(n), {-1, -1});
  for (const Edge& e : matching) {
    if (drop.erase(e.key()) > 0) continue;
    add_link(links, e.u, e.v);
  }
  return extract(n, links);
}

PathCover greedy_merge(const PathCover& cover, const MultiGraph& e1) {
  const Vertex n = cover.vertex_count();
  if (e1.vertex_count() != n) throw IndexOutOfRange("cover and graph disagree on n");
  Links links(static_cast<std::size_t>(n), {-1, -1});
  std::vector<std::int32_t> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<Vertex> worklist;
  for (const auto& path : cover.paths()) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      add_link(links, path[i], path[i + 1]);
      parent[find(path[i + 1])] = find(path[i]);
    }
    worklist.push_back(path.front());
    if (path.size() > 1) worklist.push_back(path.back());
  }

  // Endpoints never reappear once interior, and components only grow, so one
  // full scan per endpoint reaches the fixpoint.
  for (const Vertex u : worklist) {
    if (link_degree(links[u]) >= 2 || !e1.alive(u)) continue;
    e1.for_each_neighbor(u, [&](Vertex w) {
      if (link_degree(links[u]) >= 2 || w == u) return;
      if (link_degree(links[w]) >= 2) return;
      const std::int32_t ru = find(u);
      const std::int32_t rw = find(w);
      if (ru == rw) return;
      add_link(links, u, w);
      parent[ru] = rw;
    });
  }
  return extract(n, links);
}

double p1_reserve_bound(std::int64_t e2_size, std::int64_t n, double beta) {
  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  return static_cast<double>(e2_size) / (std::pow(nd, 2.0 - 2.0 * beta) * ln * ln);
}

double p1_size_bound(std::int64_t n, double beta) {
  const double nd = static_cast<double>(n);
  return std::pow(nd, beta) / (4.0 * std::log(nd));
}

bool p1_check(std::int64_t cover_size, std::int64_t e2_size, std::int64_t n, double beta) {
  if (n < 2) return false;
  const double bound = std::min(p1_reserve_bound(e2_size, n, beta), p1_size_bound(n, beta));
  return static_cast<double>(cover_size) <= bound;
}

void write_cover(std::ostream& out, const PathCover& cover) {
  for (const auto& path : cover.paths()) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) out << ' ';
      out << path[i];
    }
    out << '\n';
  }
}

}  // namespace hamrg
