#include <doctest.h>

#include <sstream>

#include "../support/small_graphs.hpp"
#include "hamrg/error.hpp"
#include "hamrg/graph_io.hpp"

using namespace hamrg;

TEST_SUITE("graph_io") {
  TEST_CASE("round trip") {
    const MultiGraph pet = testing::petersen();
    const std::vector<Edge> reserve{Edge(0, 2), Edge(3, 9)};
    std::stringstream ss;
    write_instance(ss, pet, reserve);
    const InstanceFile back = read_instance(ss);
    CHECK(back.e1.edges() == pet.edges());
    CHECK(back.e2 == reserve);

    std::stringstream plain;
    write_graph(plain, pet);
    const InstanceFile no_reserve = read_instance(plain);
    CHECK(no_reserve.e2.empty());
    CHECK(no_reserve.e1.edge_count() == 15);
  }

  TEST_CASE("comments and blank lines") {
    std::istringstream in("# triangle\n\n3 3\n0 1\n  # inner\n1 2\n2 0\n");
    const MultiGraph g = read_graph(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
  }

  TEST_CASE("parse errors") {
    const char* bad[] = {
        "",                        // no header
        "3\n",                     // short header
        "3 2\n0 1\n",              // missing edge
        "3 1\n0 3\n",              // out of range
        "3 1\n0 -1\n",             // negative
        "3 1\n0 1 2\n",            // trailing token
        "3 1\n0 x\n",              // not a number
        "3 1\n0 1\nRESERVE\n",     // no count
        "3 1\n0 1\nSPARE 1\n1 2\n",
        "3 1\n0 1\nRESERVE 2\n1 2\n",
    };
    for (const char* text : bad) {
      std::istringstream in(text);
      CHECK_THROWS_AS(read_instance(in), ParseError);
    }
    CHECK_THROWS_AS(load_instance("/nonexistent/graph.txt"), ParseError);
  }
}
