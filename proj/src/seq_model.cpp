#include "hamrg/seq_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "hamrg/error.hpp"
#include "hamrg/simd/kernels.hpp"
#include "hamrg/trunc_poisson.hpp"

namespace hamrg {

std::int64_t DegreePartition::d_total() const {
  std::int64_t total = 0;
  for (const auto& [v, d] : j0) total += d;
  return total;
}

bool DegreePartition::feasible() const {
  const std::int64_t target = 2 * m - d_total();
  const auto boundary =
      2 * static_cast<std::int64_t>(j2.size()) + 3 * static_cast<std::int64_t>(j3.size());
  if (j2.empty() && j3.empty()) return target == 0;
  return target >= boundary;
}

DegreePartition DegreePartition::all_j3(Vertex n, std::int64_t m) {
  DegreePartition p;
  p.n = n;
  p.m = m;
  p.j3.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) p.j3[static_cast<std::size_t>(v)] = v;
  return p;
}

namespace {

void validate_partition(const DegreePartition& p) {
  std::vector<char> seen(static_cast<std::size_t>(std::max<Vertex>(p.n, 0)), 0);
  auto mark = [&](Vertex v) {
    if (v < 0 || v >= p.n) throw IndexOutOfRange("partition vertex " + std::to_string(v));
    if (seen[v]) throw IndexOutOfRange("vertex " + std::to_string(v) + " listed twice");
    seen[v] = 1;
  };
  for (const auto& [v, d] : p.j0) {
    mark(v);
    if (d < 0) throw IndexOutOfRange("negative fixed degree");
  }
  for (Vertex v : p.j2) mark(v);
  for (Vertex v : p.j3) mark(v);
}

}  // namespace

DegreeSample sample_degree_sequence(const DegreePartition& partition, Rng& rng,
                                    std::int64_t max_attempts) {
  validate_partition(partition);
  const std::int64_t target = 2 * partition.m - partition.d_total();
  const auto n2 = static_cast<std::int64_t>(partition.j2.size());
  const auto n3 = static_cast<std::int64_t>(partition.j3.size());
  const std::int64_t boundary = 2 * n2 + 3 * n3;

  DegreeSample result;
  result.degrees.assign(static_cast<std::size_t>(partition.n), 0);
  for (const auto& [v, d] : partition.j0) result.degrees[v] = d;

  if (target < boundary || (n2 + n3 == 0 && target != 0)) {
    throw InfeasibleTarget("2M - D = " + std::to_string(target) +
                           " below minimum degree total " + std::to_string(boundary));
  }
  if (target == boundary) {
    for (Vertex v : partition.j2) result.degrees[v] = 2;
    for (Vertex v : partition.j3) result.degrees[v] = 3;
    result.attempts = 1;
    return result;
  }

  const double lambda = tp::solve_lambda(n2, n3, static_cast<double>(target));
  result.lambda = lambda;
  const tp::SamplingTable table2({lambda, 2});
  const tp::SamplingTable table3({lambda, 3});

  std::vector<std::uint32_t> u2(static_cast<std::size_t>(n2));
  std::vector<std::uint32_t> u3(static_cast<std::size_t>(n3));
  std::vector<std::int32_t> d2(u2.size());
  std::vector<std::int32_t> d3(u3.size());

  for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    fill_uniform_u32(rng, u2);
    fill_uniform_u32(rng, u3);
    const std::int64_t total =
        simd::lookup_draws(table2.thresholds(), 2, u2, d2) +
        simd::lookup_draws(table3.thresholds(), 3, u3, d3);
    if (total != target) continue;
    for (std::size_t i = 0; i < d2.size(); ++i) result.degrees[partition.j2[i]] = d2[i];
    for (std::size_t i = 0; i < d3.size(); ++i) result.degrees[partition.j3[i]] = d3[i];
    result.attempts = attempt;
    return result;
  }
  throw RetryLimitExceeded("degree sum never hit 2M - D = " + std::to_string(target) +
                               " in " + std::to_string(max_attempts) + " attempts",
                           max_attempts, 0, 0.0);
}

namespace {

std::vector<Vertex> expand_multiset(std::span<const std::int32_t> degrees) {
  std::int64_t total = 0;
  for (const std::int32_t d : degrees) {
    if (d < 0) throw IndexOutOfRange("negative degree");
    total += d;
  }
  if (total % 2 != 0) throw OddTotal("degree sum " + std::to_string(total) + " is odd");
  std::vector<Vertex> items;
  items.reserve(static_cast<std::size_t>(total));
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    items.insert(items.end(), static_cast<std::size_t>(degrees[v]), static_cast<Vertex>(v));
  }
  return items;
}

}  // namespace

std::vector<Vertex> sequence_from_degrees(std::span<const std::int32_t> degrees, Rng& rng) {
  std::vector<Vertex> items = expand_multiset(degrees);
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    std::swap(items[i], items[i + uniform_below<std::size_t>(rng, items.size() - i)]);
  }
  return items;
}

SimplicityDiagnostic simplicity_diagnostic(std::span<const std::int32_t> degrees) {
  double degree_sum = 0.0;
  double m2 = 0.0;
  for (const std::int32_t d : degrees) {
    degree_sum += d;
    m2 += static_cast<double>(d) * (d - 1);
  }
  SimplicityDiagnostic diag;
  if (degree_sum == 0.0) return diag;
  const double m = degree_sum / 2.0;
  diag.rho = m2 / m;
  diag.mckay_estimate = std::exp(-diag.rho * (diag.rho + 1.0));
  const double nu = m2 / degree_sum;
  diag.configuration_estimate = std::exp(-nu / 2.0 - nu * nu / 4.0);
  return diag;
}

PairingSampler::PairingSampler(std::span<const std::int32_t> degrees)
    : n_(static_cast<Vertex>(degrees.size())),
      half_edges_(expand_multiset(degrees)),
      offset_(degrees.size() + 1, 0),
      filled_(degrees.size(), 0),
      seen_(half_edges_.size()) {
  for (std::size_t v = 0; v < degrees.size(); ++v) offset_[v + 1] = offset_[v] + degrees[v];
}

std::optional<MultiGraph> PairingSampler::try_once(Rng& rng) {
  const std::size_t len = half_edges_.size();
  std::size_t i = 0;
  bool simple = true;
  for (; i < len; i += 2) {
    std::swap(half_edges_[i], half_edges_[i + uniform_below<std::size_t>(rng, len - i)]);
    std::swap(half_edges_[i + 1],
              half_edges_[i + 1 + uniform_below<std::size_t>(rng, len - i - 1)]);
    const Vertex a = half_edges_[i];
    const Vertex b = half_edges_[i + 1];
    if (a == b) {
      simple = false;
      break;
    }
    const Vertex* begin = seen_.data() + offset_[a];
    if (std::find(begin, begin + filled_[a], b) != begin + filled_[a]) {
      simple = false;
      break;
    }
    seen_[offset_[a] + filled_[a]++] = b;
    seen_[offset_[b] + filled_[b]++] = a;
  }
  const std::size_t touched = std::min(len, i + 2);
  for (std::size_t k = 0; k < touched; ++k) filled_[half_edges_[k]] = 0;
  if (!simple) return std::nullopt;
  return MultiGraph::from_pairing(n_, half_edges_);
}

GnmSample sample_gnm_mindeg3(Vertex n, std::int64_t m, Rng& rng,
                             const SamplerOptions& options) {
  if (n <= 0 || 2 * m < 3 * static_cast<std::int64_t>(n)) {
    throw InfeasibleTarget("need 2m >= 3n, got n = " + std::to_string(n) +
                           ", m = " + std::to_string(m));
  }
  const DegreePartition partition = DegreePartition::all_j3(n, m);
  GnmSample out;

  if (options.mode == SimpleSampling::GivenDegrees) {
    DegreeSample degrees = sample_degree_sequence(partition, rng, options.max_degree_attempts);
    out.degree_attempts = degrees.attempts;
    out.diagnostic = simplicity_diagnostic(degrees.degrees);
    PairingSampler pairing(degrees.degrees);
    for (std::int64_t attempt = 0; attempt <= options.max_rejects; ++attempt) {
      if (auto g = pairing.try_once(rng)) {
        out.graph = std::move(*g);
        out.rejections = attempt;
        return out;
      }
    }
    throw RetryLimitExceeded("no simple pairing in " + std::to_string(options.max_rejects + 1) +
                                 " attempts (configuration estimate " +
                                 std::to_string(out.diagnostic.configuration_estimate) + ")",
                             options.max_rejects + 1, 0, out.diagnostic.rho);
  }

  double rho_sum = 0.0;
  for (std::int64_t attempt = 0; attempt <= options.max_rejects; ++attempt) {
    DegreeSample degrees = sample_degree_sequence(partition, rng, options.max_degree_attempts);
    out.degree_attempts += degrees.attempts;
    const SimplicityDiagnostic diag = simplicity_diagnostic(degrees.degrees);
    rho_sum += diag.rho;
    PairingSampler pairing(degrees.degrees);
    if (auto g = pairing.try_once(rng)) {
      out.graph = std::move(*g);
      out.rejections = attempt;
      out.diagnostic = diag;
      return out;
    }
  }
  const std::int64_t attempts = options.max_rejects + 1;
  throw RetryLimitExceeded("no simple graph in " + std::to_string(attempts) +
                               " attempts; observed simple fraction 0, mean rho " +
                               std::to_string(rho_sum / static_cast<double>(attempts)),
                           attempts, 0, rho_sum / static_cast<double>(attempts));
}

std::int64_t default_reserve_size(Vertex n) {
  if (n <= 2) return 1;
  const double log_n = std::log(static_cast<double>(n));
  const auto s = static_cast<std::int64_t>(
      std::floor(std::sqrt(static_cast<double>(n)) / (log_n * log_n)));
  return std::max<std::int64_t>(1, s);
}

namespace {

std::vector<Edge> sample_non_edges(const MultiGraph& h, std::int64_t s, Rng& rng) {
  const Vertex n = h.vertex_count();
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t non_edges = pairs - h.edge_count();
  s = std::min(s, non_edges);
  std::vector<Edge> out;
  if (s <= 0) return out;
  out.reserve(static_cast<std::size_t>(s));

  std::unordered_set<std::uint64_t> taken;
  for (const Edge& e : h.edges()) taken.insert(e.key());

  if (n <= 2048) {
    std::vector<Edge> pool;
    pool.reserve(static_cast<std::size_t>(non_edges));
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (!taken.contains(Edge(u, v).key())) pool.emplace_back(u, v);
      }
    }
    for (std::int64_t i = 0; i < s; ++i) {
      const auto j = static_cast<std::size_t>(i) +
                     uniform_below<std::size_t>(rng, pool.size() - static_cast<std::size_t>(i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  while (static_cast<std::int64_t>(out.size()) < s) {
    const Vertex u = uniform_below<Vertex>(rng, n);
    const Vertex v = uniform_below<Vertex>(rng, n);
    if (u == v) continue;
    const Edge e(u, v);
    if (taken.insert(e.key()).second) out.push_back(e);
  }
  return out;
}

}  // namespace

Instance sample_instance_method_b(Vertex n, double c, std::optional<std::int64_t> s_override,
                                  Rng& rng, const SamplerOptions& options) {
  const auto m_total = static_cast<std::int64_t>(std::floor(c * n));
  const std::int64_t s = s_override ? *s_override : default_reserve_size(n);
  const std::int64_t m1 = m_total - s;
  if (s < 0 || 2 * m1 < 3 * static_cast<std::int64_t>(n)) {
    throw InfeasibleTarget("cn - s = " + std::to_string(m1) + " is below 3n/2 for n = " +
                           std::to_string(n));
  }
  GnmSample h = sample_gnm_mindeg3(n, m1, rng, options);
  Instance inst;
  inst.n = n;
  inst.c = c;
  inst.rejections = h.rejections;
  inst.degree_attempts = h.degree_attempts;
  inst.rho = h.diagnostic.rho;
  inst.e2 = sample_non_edges(h.graph, s, rng);
  inst.s = static_cast<std::int64_t>(inst.e2.size());
  inst.e1 = std::move(h.graph);
  return inst;
}

}  // namespace hamrg
