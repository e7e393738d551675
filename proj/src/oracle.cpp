#include "hamrg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hamrg/error.hpp"

namespace hamrg {

namespace {

std::vector<std::uint32_t> adjacency_masks(const MultiGraph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

}  // namespace

OracleResult exact_hamiltonian(const MultiGraph& g) {
  const Vertex n = g.vertex_count();
  if (n > kMaxOracleHamiltonN) {
    throw TooLarge("exact_hamiltonian supports n <= 22, got " + std::to_string(n));
  }
  OracleResult out;
  if (n < 3) return out;
  const auto adj = adjacency_masks(g);
  const std::uint32_t full = (1u << n) - 1;
  // ends[mask]: vertices v such that some path from 0 covers exactly mask and
  // stops at v. Only masks containing vertex 0 are used.
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    for (std::uint32_t rest = ends[mask]; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      for (std::uint32_t next = adj[v] & ~mask; next; next &= next - 1) {
        const int w = std::countr_zero(next);
        ends[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  const std::uint32_t closing = ends[full] & adj[0];
  if (closing == 0) return out;

  out.hamiltonian = true;
  std::vector<Vertex> rev;
  std::uint32_t mask = full;
  int cur = std::countr_zero(closing);
  while (mask != 1) {
    rev.push_back(cur);
    const std::uint32_t prev_mask = mask & ~(1u << cur);
    const std::uint32_t cand = ends[prev_mask] & adj[cur];
    mask = prev_mask;
    cur = std::countr_zero(cand);
  }
  rev.push_back(0);
  std::reverse(rev.begin(), rev.end());
  out.witness_cycle = std::move(rev);
  return out;
}

std::int64_t exact_min_path_cover(const MultiGraph& g) {
  const Vertex n = g.vertex_count();
  if (n > kMaxOracleCoverN) {
    throw TooLarge("exact_min_path_cover supports n <= 14, got " + std::to_string(n));
  }
  if (n == 0) return 0;
  const auto adj = adjacency_masks(g);
  const std::uint32_t full = (1u << n) - 1;
  // ends[mask]: possible end vertices of a Hamilton path of g[mask].
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (int v = 0; v < n; ++v) ends[1u << v] = 1u << v;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (std::uint32_t rest = ends[mask]; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      for (std::uint32_t next = adj[v] & ~mask; next; next &= next - 1) {
        const int w = std::countr_zero(next);
        ends[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  std::vector<std::int8_t> best(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t others = mask ^ low;
    std::int8_t b = 127;
    // Submasks of `others`, each joined with the lowest vertex.
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      const std::uint32_t part = sub | low;
      if (ends[part]) b = std::min<std::int8_t>(b, static_cast<std::int8_t>(best[mask ^ part] + 1));
      if (sub == 0) break;
    }
    best[mask] = b;
  }
  return best[full];
}

}  // namespace hamrg
