#pragma once

// Exponential-time ground truth for small graphs.

#include <cstdint>
#include <optional>
#include <vector>

#include "hamrg/multigraph.hpp"

namespace hamrg {

inline constexpr Vertex kMaxOracleHamiltonN = 22;
inline constexpr Vertex kMaxOracleCoverN = 14;

struct OracleResult {
  bool hamiltonian = false;
  std::optional<std::vector<Vertex>> witness_cycle;  // starts at vertex 0
  std::optional<std::int64_t> min_cover_size;
};

// Subset DP over (vertex set, end vertex) for paths starting at vertex 0.
// Loops and repeated edges are ignored. Graphs with fewer than three
// vertices are never Hamiltonian. Throws TooLarge for n > 22.
OracleResult exact_hamiltonian(const MultiGraph& g);

// Fewest vertex-disjoint paths covering every vertex. Throws TooLarge for
// n > 14.
std::int64_t exact_min_path_cover(const MultiGraph& g);

}  // namespace hamrg
