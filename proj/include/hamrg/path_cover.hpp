#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hamrg/multigraph.hpp"

namespace hamrg {

enum class PathSide : std::uint8_t { None = 0, Front = 1, Back = 2, Both = 3 };

struct PathEnd {
  std::int32_t path = -1;
  PathSide side = PathSide::None;  // Both for single-vertex paths
};

// Vertex-disjoint paths covering 0..n-1.
class PathCover {
 public:
  PathCover() = default;
  // Throws IndexOutOfRange unless the paths partition 0..n-1.
  PathCover(Vertex n, std::vector<std::vector<Vertex>> paths);

  Vertex vertex_count() const { return static_cast<Vertex>(ends_.size()); }
  std::size_t size() const { return paths_.size(); }
  const std::vector<std::vector<Vertex>>& paths() const { return paths_; }
  // Path id and side if v is an endpoint, {-1, None} for interior vertices.
  PathEnd endpoint(Vertex v) const { return ends_[v]; }

  // Every consecutive pair of every path is an edge of g.
  bool edges_in(const MultiGraph& g) const;

 private:
  std::vector<std::vector<Vertex>> paths_;
  std::vector<PathEnd> ends_;
};

// Paths of a 2-matching. A cycle loses its smallest edge (u, v), u < v, and
// becomes the path from u to v. Paths start at their smaller endpoint and are
// listed by that endpoint, followed by the single vertices in ascending order.
// Throws NotA2Matching.
PathCover cover_from_matching(const std::vector<Edge>& matching, Vertex n);

// Joins paths whose endpoints are adjacent in e1 until no edge of e1 joins
// endpoints of two different paths. Output uses the same ordering as
// cover_from_matching.
PathCover greedy_merge(const PathCover& cover, const MultiGraph& e1);

// |P| <= min(|E2| / (n^{2-2beta} ln^2 n), n^beta / (4 ln n)).
bool p1_check(std::int64_t cover_size, std::int64_t e2_size, std::int64_t n, double beta);
// The two bounds of p1_check, in order.
double p1_reserve_bound(std::int64_t e2_size, std::int64_t n, double beta);
double p1_size_bound(std::int64_t n, double beta);

// One path per line, vertices separated by spaces.
void write_cover(std::ostream& out, const PathCover& cover);

}  // namespace hamrg
