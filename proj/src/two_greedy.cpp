#include "hamrg/two_greedy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hamrg/error.hpp"
#include "hamrg/trunc_poisson.hpp"

namespace hamrg {

namespace {

constexpr std::size_t idx(VertexClass c) { return static_cast<std::size_t>(c); }

}  // namespace

TwoGreedy::TwoGreedy(MultiGraph g, TwoGreedyOptions options)
    : gamma_(std::move(g)), options_(options), n_(gamma_.vertex_count()) {
  for (Vertex v = 0; v < n_; ++v) {
    if (options_.require_min_degree3 && gamma_.alive(v) && gamma_.degree(v) < 3) {
      throw MinDegreeViolation("vertex " + std::to_string(v) + " has degree " +
                               std::to_string(gamma_.degree(v)));
    }
  }
  stop_threshold_ = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n_), 0.4)));
  const double ln_n = n_ > 1 ? std::log(static_cast<double>(n_)) : 0.0;
  log3_n_ = ln_n * ln_n * ln_n;

  const auto n = static_cast<std::size_t>(n_);
  b_.assign(n, 0);
  class_.assign(n, VertexClass::Matched);
  pos_.assign(n, -1);
  placed_degree_.assign(n, 0);
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), 0);
  stamp_.assign(n, 0);
  for (Vertex v = 0; v < n_; ++v) {
    // Dead vertices in the input are left out of every class.
    if (!gamma_.alive(v)) continue;
    if (gamma_.degree(v) == 0) gamma_.retire_isolated(v);
    place(v);
  }
}

VertexClass TwoGreedy::classify(Vertex v) const {
  const std::uint8_t b = b_[v];
  if (b >= 2) return VertexClass::Matched;
  if (!gamma_.alive(v)) return b == 0 ? VertexClass::V00 : VertexClass::V01;
  const std::int32_t d = gamma_.degree(v);
  if (b == 0) {
    if (d == 1) return VertexClass::Y1;
    if (d == 2) return VertexClass::Y2;
    return VertexClass::Y;
  }
  return d == 1 ? VertexClass::Z1 : VertexClass::Z;
}

// Moves v into the class implied by its current state, keeping z2 and y3 in
// step with the degree seen at placement time.
void TwoGreedy::place(Vertex v) {
  const VertexClass old_class = class_[v];
  if (pos_[v] >= 0) {
    if (old_class == VertexClass::Z && placed_degree_[v] == 2) --z2_;
    if (old_class == VertexClass::Y && placed_degree_[v] == 3) --y3_;
    auto& set = sets_[idx(old_class)];
    const Vertex last = set.back();
    set[pos_[v]] = last;
    pos_[last] = pos_[v];
    set.pop_back();
    pos_[v] = -1;
  }
  const VertexClass c = classify(v);
  const std::int32_t d = gamma_.alive(v) ? gamma_.degree(v) : 0;
  class_[v] = c;
  placed_degree_[v] = d;
  if (c == VertexClass::Matched) return;
  auto& set = sets_[idx(c)];
  pos_[v] = static_cast<std::int32_t>(set.size());
  set.push_back(v);
  if (c == VertexClass::Z && d == 2) ++z2_;
  if (c == VertexClass::Y && d == 3) ++y3_;
}

std::int32_t TwoGreedy::find(std::int32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::int64_t TwoGreedy::zeta() const {
  return static_cast<std::int64_t>(class_size(VertexClass::Y1)) +
         2 * static_cast<std::int64_t>(class_size(VertexClass::Y2)) +
         static_cast<std::int64_t>(class_size(VertexClass::Z1));
}

StepInfo TwoGreedy::step(Rng& rng) {
  if (gamma_.alive_count() == 0) throw EmptyGraph("no alive vertex left");

  StepInfo info;
  info.zeta_before = zeta();
  const auto& z1 = sets_[idx(VertexClass::Z1)];
  const auto& y1 = sets_[idx(VertexClass::Y1)];
  const auto& y2 = sets_[idx(VertexClass::Y2)];
  const std::size_t urgent = z1.size() + y1.size() + y2.size();
  Vertex v;
  if (urgent > 0) {
    std::size_t r = uniform_below<std::size_t>(rng, urgent);
    if (r < z1.size()) {
      v = z1[r];
    } else if ((r -= z1.size()) < y1.size()) {
      v = y1[r];
    } else {
      v = y2[r - y1.size()];
    }
    info.urgent = true;
  } else {
    const auto& z = sets_[idx(VertexClass::Z)];
    const auto& y = sets_[idx(VertexClass::Y)];
    const std::size_t pool = z.size() + y.size();
    // Every alive vertex sits in one of the five sets, so pool > 0 here.
    const std::size_t r = uniform_below<std::size_t>(rng, pool);
    v = r < z.size() ? z[r] : y[r - z.size()];
  }

  const HalfEdge he = gamma_.random_incident_edge(v, rng);
  const Vertex w = he.neighbor;
  info.v = v;
  info.w = w;
  info.w_class = class_[w];

  gamma_.remove_edge(he.edge);
  matching_.emplace_back(v, w);
  const std::int32_t rv = find(v);
  const std::int32_t rw = find(w);
  if (rv == rw) {
    ++kappa2_;
  } else {
    parent_[rv] = rw;
  }
  ++b_[v];
  ++b_[w];

  if (++stamp_clock_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    stamp_clock_ = 1;
  }
  std::vector<Vertex> touched;
  auto touch = [&](Vertex u) {
    if (stamp_[u] != stamp_clock_) {
      stamp_[u] = stamp_clock_;
      touched.push_back(u);
    }
  };
  touch(v);
  touch(w);
  for (const Vertex u : {v, w}) {
    if (b_[u] >= 2 && gamma_.alive(u)) {
      gamma_.for_each_neighbor(u, touch);
      gamma_.remove_vertex(u);
    }
  }
  for (const Vertex u : touched) {
    if (gamma_.alive(u) && gamma_.degree(u) == 0) gamma_.retire_isolated(u);
  }
  for (const Vertex u : touched) place(u);

  ++step_;
  info.zeta_after = zeta();
  trajectory_.push_back(snapshot());
  if (options_.validate_every_step && !classes_consistent()) {
    throw std::logic_error("class bookkeeping diverged at step " + std::to_string(step_));
  }
  return info;
}

TrajectoryRecord TwoGreedy::snapshot() {
  TrajectoryRecord r;
  r.i = step_;
  r.m = gamma_.edge_count();
  r.zeta = zeta();
  r.z2 = z2_;
  r.y3 = y3_;
  r.y = static_cast<std::int64_t>(class_size(VertexClass::Y));
  r.z = static_cast<std::int64_t>(class_size(VertexClass::Z));
  const std::int64_t target = 2 * r.m - r.zeta;
  if (r.y + r.z > 0 && target > 2 * r.z + 3 * r.y) {
    try {
      r.lambda = tp::solve_lambda(r.z, r.y, static_cast<double>(target));
    } catch (const NonConvergence&) {
      r.lambda.reset();
    }
  }
  if (r.m > 0) {
    r.p2 = static_cast<double>(2 * r.z2) / static_cast<double>(2 * r.m);
    r.p3 = static_cast<double>(3 * r.y3) / static_cast<double>(2 * r.m);
  }
  const bool a_now = r.lambda && static_cast<double>(r.z + r.y) * *r.lambda >= log3_n_;
  a_running_ = a_running_ && a_now;
  r.a = a_running_;
  const double m = static_cast<double>(r.m);
  r.b = (r.lambda && r.m > 0 && *r.lambda >= std::pow(m, -0.2)) ||
        static_cast<double>(r.y) >= std::pow(m, 0.8);
  r.kappa1 = static_cast<std::int64_t>(class_size(VertexClass::V00) +
                                       class_size(VertexClass::V01));
  r.kappa2 = kappa2_;
  return r;
}

void TwoGreedy::run(Rng& rng) {
  while (gamma_.alive_count() > stop_threshold_) step(rng);
}

bool TwoGreedy::classes_consistent() const {
  std::int64_t z2 = 0;
  std::int64_t y3 = 0;
  std::array<std::size_t, kVertexClassCount> counts{};
  for (Vertex v = 0; v < n_; ++v) {
    const VertexClass c = classify(v);
    if (c != class_[v]) return false;
    if (b_[v] >= 2 && gamma_.alive(v)) return false;
    if (c == VertexClass::Matched) {
      if (pos_[v] >= 0) return false;
      continue;
    }
    const auto& set = sets_[idx(c)];
    if (pos_[v] < 0 || static_cast<std::size_t>(pos_[v]) >= set.size() || set[pos_[v]] != v) {
      return false;
    }
    ++counts[idx(c)];
    const std::int32_t d = gamma_.alive(v) ? gamma_.degree(v) : 0;
    if (c == VertexClass::Z && d == 2) ++z2;
    if (c == VertexClass::Y && d == 3) ++y3;
  }
  for (std::size_t c = 0; c < kVertexClassCount; ++c) {
    if (c != idx(VertexClass::Matched) && counts[c] != sets_[c].size()) return false;
  }
  return z2 == z2_ && y3 == y3_;
}

TwoGreedyResult run_two_greedy(const MultiGraph& g, Rng& rng, TwoGreedyOptions options) {
  TwoGreedy state(g, options);
  state.run(rng);
  return {state.matching(), state.trajectory()};
}

MatchingComponents matching_components(const std::vector<Edge>& matching, Vertex n) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::array<EdgeId, 2>> at(un, {-1, -1});
  std::vector<std::uint8_t> deg(un, 0);
  for (std::size_t e = 0; e < matching.size(); ++e) {
    const Edge& ed = matching[e];
    if (ed.u < 0 || ed.v >= n) throw IndexOutOfRange("matching edge outside 0..n-1");
    for (const Vertex x : {ed.u, ed.v}) {
      if (deg[x] >= 2) {
        throw NotA2Matching("vertex " + std::to_string(x) + " lies in three matching edges");
      }
      at[x][deg[x]++] = static_cast<EdgeId>(e);
    }
  }

  MatchingComponents out;
  for (Vertex v = 0; v < n; ++v) {
    if (deg[v] <= 1) ++out.kappa1;
  }

  std::vector<char> edge_used(matching.size(), 0);
  std::vector<char> seen(un, 0);
  // Follows unused matching edges from `start`, appending vertices.
  auto walk = [&](Vertex start, std::vector<Vertex>& verts) {
    Vertex cur = start;
    for (;;) {
      EdgeId next = -1;
      for (std::uint8_t k = 0; k < deg[cur]; ++k) {
        if (!edge_used[at[cur][k]]) {
          next = at[cur][k];
          break;
        }
      }
      if (next < 0) return;
      edge_used[next] = 1;
      const Vertex nxt = matching[next].other(cur);
      if (seen[nxt]) return;  // closed a cycle
      seen[nxt] = 1;
      verts.push_back(nxt);
      cur = nxt;
    }
  };

  for (Vertex v = 0; v < n; ++v) {
    if (seen[v] || deg[v] > 1) continue;
    MatchingComponent comp;
    seen[v] = 1;
    comp.vertices.push_back(v);
    walk(v, comp.vertices);
    out.components.push_back(std::move(comp));
  }
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v]) continue;
    MatchingComponent comp;
    comp.cycle = true;
    seen[v] = 1;
    comp.vertices.push_back(v);
    walk(v, comp.vertices);
    out.components.push_back(std::move(comp));
    ++out.kappa2;
  }
  return out;
}

}  // namespace hamrg
