#pragma once

// Checker for the expansion condition: for every vertex set X considered,
// either e(X u N(X)) <= |X u N(X)| or |N(X)| >= 2|X|, with N taken in the
// given graph.

#include <cstdint>
#include <span>
#include <vector>

#include "hamrg/multigraph.hpp"
#include "hamrg/random.hpp"

namespace hamrg {

struct SetExpansion {
  std::int64_t x = 0;          // |X|
  std::int64_t neighbors = 0;  // |N(X)|, N(X) disjoint from X
  std::int64_t edges = 0;      // edges with both ends in X u N(X)

  bool violates() const { return edges > x + neighbors && neighbors < 2 * x; }
};

// X must hold distinct alive vertices.
SetExpansion measure_set(const MultiGraph& g, std::span<const Vertex> x);

enum class ExpansionMode { Exact, Sampled };

struct ExpansionReport {
  ExpansionMode mode = ExpansionMode::Exact;
  std::int64_t checked_sets = 0;
  std::int64_t violation_count = 0;
  std::vector<std::vector<Vertex>> violations;  // witnesses, at most kMaxWitnesses

  static constexpr std::size_t kMaxWitnesses = 1000;
};

inline constexpr double kMaxExactSubsets = 1e8;

// Every X with 1 <= |X| <= x_max over the alive vertices, in lexicographic
// order. Throws TooLarge when that is more than kMaxExactSubsets sets.
ExpansionReport check_exact(const MultiGraph& g, int x_max);

// `trials` connected sets grown from a uniform start by adding a uniform
// boundary vertex at a time; every prefix up to size_cap is tested.
ExpansionReport check_sampled(const MultiGraph& g, int size_cap, std::int64_t trials, Rng& rng);

}  // namespace hamrg
