#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hamrg/error.hpp"
#include "hamrg/multigraph.hpp"
#include "hamrg/random.hpp"

using namespace hamrg;

namespace {

bool degree_sum_consistent(const MultiGraph& g) {
  std::int64_t sum = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.alive(v) && g.degree(v) != 0) return false;
    sum += g.degree(v);
  }
  return sum == 2 * g.edge_count() && sum == g.degree_sum();
}

}  // namespace

TEST_SUITE("multigraph") {
  TEST_CASE("from_pairing") {
    const std::vector<Vertex> seq{0, 1, 1, 2};
    const MultiGraph g = MultiGraph::from_pairing(3, seq);
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(2) == 1);
    CHECK(g.edges() == std::vector<Edge>{Edge(0, 1), Edge(1, 2)});
    CHECK(g.is_simple());

    const std::vector<Vertex> loop{0, 0};
    const MultiGraph l = MultiGraph::from_pairing(1, loop);
    CHECK(l.degree(0) == 2);
    CHECK(l.edge_count() == 1);
    CHECK_FALSE(l.is_simple());

    const std::vector<Vertex> odd{0, 1, 2};
    CHECK_THROWS_AS(MultiGraph::from_pairing(3, odd), IndexOutOfRange);
    const std::vector<Vertex> out_of_range{0, 5};
    CHECK_THROWS_AS(MultiGraph::from_pairing(3, out_of_range), IndexOutOfRange);
  }

  TEST_CASE("random pairing degree sums") {
    Rng rng = derive_stream(1, 0);
    for (int trial = 0; trial < 50; ++trial) {
      const Vertex n = 1 + uniform_below<Vertex>(rng, 30);
      std::vector<Vertex> seq(2 * (1 + uniform_below<std::size_t>(rng, 40)));
      for (auto& x : seq) x = uniform_below<Vertex>(rng, n);
      const MultiGraph g = MultiGraph::from_pairing(n, seq);
      CHECK(degree_sum_consistent(g));
      CHECK(g.edge_count() * 2 == static_cast<std::int64_t>(seq.size()));
      bool has_loop = false;
      for (std::size_t i = 0; i < seq.size(); i += 2) has_loop |= seq[i] == seq[i + 1];
      if (has_loop) CHECK_FALSE(g.is_simple());
    }
  }

  TEST_CASE("is_simple") {
    const std::vector<Edge> path{Edge(0, 1), Edge(1, 2)};
    CHECK(MultiGraph::from_edges(3, path).is_simple());
    const std::vector<Edge> loop{Edge(0, 0)};
    CHECK_FALSE(MultiGraph::from_edges(1, loop).is_simple());
    const std::vector<Edge> parallel{Edge(0, 1), Edge(0, 1)};
    CHECK_FALSE(MultiGraph::from_edges(2, parallel).is_simple());
  }

  TEST_CASE("removal keeps degree bookkeeping exact") {
    // K4: remove_vertex on a degree-3 vertex drops three edges.
    std::vector<Edge> k4;
    for (Vertex u = 0; u < 4; ++u) {
      for (Vertex v = u + 1; v < 4; ++v) k4.emplace_back(u, v);
    }
    MultiGraph g = MultiGraph::from_edges(4, k4);
    g.remove_vertex(0);
    CHECK(g.edge_count() == 3);
    CHECK_FALSE(g.alive(0));
    CHECK(g.alive_count() == 3);
    CHECK(degree_sum_consistent(g));
    CHECK_THROWS_AS(g.remove_vertex(0), DeadVertex);
    CHECK_THROWS_AS(g.neighbors_with_multiplicity(0), DeadVertex);

    const auto inc = g.incident(1);
    REQUIRE(inc.size() == 2);
    g.remove_edge(inc[0].edge);
    CHECK(g.edge_count() == 2);
    CHECK(degree_sum_consistent(g));
    CHECK_THROWS_AS(g.remove_edge(inc[0].edge), IndexOutOfRange);
  }

  TEST_CASE("loops count twice") {
    std::vector<Edge> edges{Edge(0, 0), Edge(0, 1)};
    MultiGraph g = MultiGraph::from_edges(2, edges);
    CHECK(g.degree(0) == 3);
    auto nb = g.neighbors_with_multiplicity(0);
    std::sort(nb.begin(), nb.end());
    CHECK(nb == std::vector<Vertex>{0, 0, 1});
    g.remove_edge(0);
    CHECK(g.degree(0) == 1);
    CHECK(degree_sum_consistent(g));
  }

  TEST_CASE("random neighbor is proportional to multiplicity") {
    // v = 0 with edges 0-1, 0-1, 0-2.
    std::vector<Edge> edges{Edge(0, 1), Edge(0, 1), Edge(0, 2)};
    const MultiGraph g = MultiGraph::from_edges(3, edges);
    Rng rng = derive_stream(5, 0);
    const int trials = 100000;
    int hits = 0;
    for (int i = 0; i < trials; ++i) hits += g.random_incident_half_edge(0, rng) == 1;
    const double p = 2.0 / 3.0;
    const double sigma = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(static_cast<double>(hits) / trials - p) <= 3 * sigma);

    MultiGraph h(2);
    CHECK_THROWS_AS(h.random_incident_edge(0, rng), IsolatedVertex);
    h.retire_isolated(1);
    CHECK_THROWS_AS(h.random_incident_edge(1, rng), DeadVertex);
  }

  TEST_CASE("random operation sequences preserve the degree identity") {
    Rng rng = derive_stream(9, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const Vertex n = 12;
      std::vector<Vertex> seq(60);
      for (auto& x : seq) x = uniform_below<Vertex>(rng, n);
      MultiGraph g = MultiGraph::from_pairing(n, seq);
      for (int op = 0; op < 40 && g.edge_count() > 0; ++op) {
        const Vertex v = uniform_below<Vertex>(rng, n);
        if (!g.alive(v)) continue;
        if (g.degree(v) == 0) {
          g.retire_isolated(v);
        } else if (uniform_below(rng, 3) == 0) {
          g.remove_vertex(v);
        } else {
          g.remove_edge(g.random_incident_edge(v, rng).edge);
        }
        REQUIRE(degree_sum_consistent(g));
      }
    }
  }
}
