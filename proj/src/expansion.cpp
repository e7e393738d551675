#include "hamrg/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamrg/error.hpp"

namespace hamrg {

namespace {

// Scratch marks reused across sets: 1 = in X, 2 = in N(X).
class Measurer {
 public:
  explicit Measurer(const MultiGraph& g)
      : g_(g), mark_(static_cast<std::size_t>(g.vertex_count()), 0) {}

  SetExpansion operator()(std::span<const Vertex> x) {
    SetExpansion r;
    r.x = static_cast<std::int64_t>(x.size());
    members_.assign(x.begin(), x.end());
    for (const Vertex v : x) mark_[v] = 1;
    for (const Vertex v : x) {
      g_.for_each_neighbor(v, [&](Vertex w) {
        if (mark_[w] == 0) {
          mark_[w] = 2;
          members_.push_back(w);
        }
      });
    }
    r.neighbors = static_cast<std::int64_t>(members_.size()) - r.x;
    std::int64_t ends = 0;
    for (const Vertex v : members_) {
      g_.for_each_neighbor(v, [&](Vertex w) { ends += mark_[w] != 0; });
    }
    r.edges = ends / 2;
    for (const Vertex v : members_) mark_[v] = 0;
    return r;
  }

 private:
  const MultiGraph& g_;
  std::vector<std::uint8_t> mark_;
  std::vector<Vertex> members_;
};

void record(ExpansionReport& report, std::span<const Vertex> x) {
  ++report.violation_count;
  if (report.violations.size() < ExpansionReport::kMaxWitnesses) {
    report.violations.emplace_back(x.begin(), x.end());
  }
}

}  // namespace

SetExpansion measure_set(const MultiGraph& g, std::span<const Vertex> x) {
  for (const Vertex v : x) {
    if (v < 0 || v >= g.vertex_count()) throw IndexOutOfRange("vertex " + std::to_string(v));
    if (!g.alive(v)) throw DeadVertex("vertex " + std::to_string(v));
  }
  return Measurer(g)(x);
}

ExpansionReport check_exact(const MultiGraph& g, int x_max) {
  std::vector<Vertex> alive;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.alive(v)) alive.push_back(v);
  }
  const auto n = static_cast<int>(alive.size());
  x_max = std::min(x_max, n);
  double total = 0.0;
  for (int k = 1; k <= x_max; ++k) {
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
  }
  if (total > kMaxExactSubsets * (1 + 1e-9)) {
    throw TooLarge(std::to_string(total) + " subsets exceed the exact-mode limit");
  }

  ExpansionReport report;
  report.mode = ExpansionMode::Exact;
  Measurer measure(g);
  std::vector<int> idx;
  std::vector<Vertex> x;
  for (int k = 1; k <= x_max; ++k) {
    idx.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      x.clear();
      for (const int i : idx) x.push_back(alive[i]);
      ++report.checked_sets;
      if (measure(x).violates()) record(report, x);
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return report;
}

ExpansionReport check_sampled(const MultiGraph& g, int size_cap, std::int64_t trials, Rng& rng) {
  ExpansionReport report;
  report.mode = ExpansionMode::Sampled;
  if (trials <= 0 || size_cap <= 0 || g.alive_count() == 0) return report;
  std::vector<Vertex> alive;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.alive(v)) alive.push_back(v);
  }
  Measurer measure(g);
  std::vector<char> in_x(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<char> in_boundary(in_x.size(), 0);
  std::vector<Vertex> x;
  std::vector<Vertex> boundary;
  for (std::int64_t t = 0; t < trials; ++t) {
    x.clear();
    boundary.clear();
    Vertex next = alive[uniform_below<std::size_t>(rng, alive.size())];
    for (;;) {
      in_x[next] = 1;
      x.push_back(next);
      g.for_each_neighbor(next, [&](Vertex w) {
        if (!in_x[w] && !in_boundary[w]) {
          in_boundary[w] = 1;
          boundary.push_back(w);
        }
      });
      ++report.checked_sets;
      if (measure(x).violates()) record(report, x);
      if (static_cast<int>(x.size()) >= size_cap || boundary.empty()) break;
      const std::size_t pick = uniform_below<std::size_t>(rng, boundary.size());
      next = boundary[pick];
      boundary[pick] = boundary.back();
      boundary.pop_back();
      in_boundary[next] = 0;
    }
    for (const Vertex v : x) in_x[v] = 0;
    for (const Vertex v : boundary) in_boundary[v] = 0;
  }
  return report;
}

}  // namespace hamrg
