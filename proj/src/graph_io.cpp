#include "hamrg/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hamrg/error.hpp"

namespace hamrg {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(number_) + ": " + what);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

std::pair<long long, long long> two_ints(LineReader& reader, const std::string& line) {
  std::istringstream ss(line);
  long long a = 0;
  long long b = 0;
  std::string extra;
  if (!(ss >> a >> b) || (ss >> extra)) reader.fail("expected two integers, got '" + line + "'");
  return {a, b};
}

Edge read_edge(LineReader& reader, Vertex n) {
  std::string line;
  if (!reader.next(line)) reader.fail("unexpected end of input");
  const auto [u, v] = two_ints(reader, line);
  if (u < 0 || v < 0 || u >= n || v >= n) reader.fail("vertex out of range");
  return Edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
}

MultiGraph read_graph_body(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) reader.fail("missing header");
  const auto [n, m] = two_ints(reader, line);
  if (n < 0 || m < 0 || n > (1LL << 30)) reader.fail("bad header");
  MultiGraph g(static_cast<Vertex>(n));
  for (long long i = 0; i < m; ++i) {
    const Edge e = read_edge(reader, g.vertex_count());
    g.add_edge(e.u, e.v);
  }
  return g;
}

}  // namespace

MultiGraph read_graph(std::istream& in) {
  LineReader reader(in);
  return read_graph_body(reader);
}

InstanceFile read_instance(std::istream& in) {
  LineReader reader(in);
  InstanceFile out;
  out.e1 = read_graph_body(reader);
  std::string line;
  if (!reader.next(line)) return out;
  std::istringstream ss(line);
  std::string tag;
  long long s = -1;
  if (!(ss >> tag >> s) || tag != "RESERVE" || s < 0) reader.fail("expected 'RESERVE s'");
  for (long long i = 0; i < s; ++i) out.e2.push_back(read_edge(reader, out.e1.vertex_count()));
  return out;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_instance(in);
}

void write_graph(std::ostream& out, const MultiGraph& g) {
  const auto edges = g.edges();
  out << g.vertex_count() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

void write_instance(std::ostream& out, const MultiGraph& e1, const std::vector<Edge>& e2) {
  write_graph(out, e1);
  out << "RESERVE " << e2.size() << '\n';
  for (const Edge& e : e2) out << e.u << ' ' << e.v << '\n';
}

}  // namespace hamrg
