#pragma once

// Plain-text graph files.
//
// Edge list:     first line "n m", then m lines "u v" (0-based).
// Instance file: an edge list for E1, then "RESERVE s" and s lines "u v"
//                giving E2 in reveal order.
// Lines starting with '#' and blank lines are skipped.

#include <iosfwd>
#include <string>
#include <vector>

#include "hamrg/multigraph.hpp"

namespace hamrg {

struct InstanceFile {
  MultiGraph e1;
  std::vector<Edge> e2;
};

// Throws ParseError.
MultiGraph read_graph(std::istream& in);
InstanceFile read_instance(std::istream& in);
InstanceFile load_instance(const std::string& path);

void write_graph(std::ostream& out, const MultiGraph& g);
void write_instance(std::ostream& out, const MultiGraph& e1, const std::vector<Edge>& e2);

}  // namespace hamrg
