#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hamrg/error.hpp"
#include "hamrg/expansion.hpp"
#include "hamrg/graph_io.hpp"
#include "hamrg/harness.hpp"
#include "hamrg/oracle.hpp"
#include "hamrg/path_cover.hpp"
#include "hamrg/posa.hpp"
#include "hamrg/seq_model.hpp"
#include "hamrg/simd/kernels.hpp"
#include "hamrg/two_greedy.hpp"

namespace {

using namespace hamrg;

struct Common {
  Vertex n = 1000;
  double c = 2.7;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
  double beta = 0.99;
  double epsilon = 1e-5;
  std::optional<std::int64_t> s;
  std::string out;
  int jobs = 1;
  std::string file;
  std::string sampler = "given";
  bool no_timing = false;
};

void add_instance_flags(CLI::App* cmd, Common& o) {
  cmd->add_option("--n", o.n, "vertex count")->check(CLI::PositiveNumber);
  cmd->add_option("--c", o.c, "edge density m/n");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--s", o.s, "reserve size (default max(1, floor(sqrt(n)/ln^2 n)))");
  cmd->add_option("--sampler", o.sampler, "exact | given")
      ->check(CLI::IsMember({"exact", "given"}));
}

ExperimentConfig to_config(const Common& o) {
  ExperimentConfig cfg;
  cfg.n = o.n;
  cfg.c = o.c;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.beta = o.beta;
  cfg.epsilon = o.epsilon;
  cfg.s_override = o.s;
  cfg.out = o.out;
  cfg.jobs = o.jobs;
  cfg.sampler = o.sampler == "exact" ? SimpleSampling::Exact : SimpleSampling::GivenDegrees;
  cfg.record_timing = !o.no_timing;
  return cfg;
}

InstanceFile obtain_instance(const Common& o) {
  if (!o.file.empty()) return load_instance(o.file);
  Rng rng = derive_stream(o.seed, 0);
  SamplerOptions options;
  options.mode = o.sampler == "exact" ? SimpleSampling::Exact : SimpleSampling::GivenDegrees;
  Instance inst = sample_instance_method_b(o.n, o.c, o.s, rng, options);
  return {std::move(inst.e1), std::move(inst.e2)};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    if (end > start) parts.push_back(s.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random graph Hamiltonicity experiments"};
  app.require_subcommand(1);
  Common o;

  auto* gen = app.add_subcommand("gen", "sample an instance (E1 and reserve E2)");
  add_instance_flags(gen, o);
  gen->add_option("--out", o.out, "instance file (default stdout)");

  auto* tg = app.add_subcommand("twogreedy", "run 2GREEDY and dump its trajectory and cover");
  add_instance_flags(tg, o);
  tg->add_option("--file", o.file, "instance file instead of a fresh sample");
  std::string trace_path;
  std::string cover_path;
  tg->add_option("--trace", trace_path, "trajectory CSV");
  tg->add_option("--cover-out", cover_path, "merged path cover, one path per line");

  auto* ham = app.add_subcommand("ham", "full pipeline on a file or on fresh samples");
  add_instance_flags(ham, o);
  ham->add_option("--file", o.file, "instance file");
  ham->add_option("--trials", o.trials, "independent trials")->check(CLI::PositiveNumber);
  ham->add_option("--beta", o.beta, "P1 exponent");
  ham->add_option("--epsilon", o.epsilon, "tau threshold slack");
  ham->add_option("--out", o.out, "result CSV (default stdout)");
  ham->add_option("--jobs", o.jobs, "worker threads");
  ham->add_flag("--no-timing", o.no_timing, "leave ms_elapsed empty for reproducible output");

  auto* sw = app.add_subcommand("sweep", "success rates over a grid of n and c");
  std::string n_list = "500,2000";
  std::string c_list = "1.8,2.2,2.7,3.2";
  sw->add_option("--n", n_list, "comma-separated vertex counts");
  sw->add_option("--c", c_list, "comma-separated densities");
  sw->add_option("--trials", o.trials, "trials per cell")->check(CLI::PositiveNumber);
  sw->add_option("--seed", o.seed, "random seed");
  sw->add_option("--s", o.s, "reserve size override");
  sw->add_option("--beta", o.beta, "P1 exponent");
  sw->add_option("--epsilon", o.epsilon, "tau threshold slack");
  sw->add_option("--out", o.out, "summary CSV (default stdout)");
  sw->add_option("--jobs", o.jobs, "worker threads");

  auto* cm = app.add_subcommand("check-model", "statistical checks of the degree model");
  std::int64_t samples = 1000;
  cm->add_option("--n", o.n, "vertex count");
  cm->add_option("--c", o.c, "edge density");
  cm->add_option("--samples", samples, "degree sequences to draw");
  cm->add_option("--seed", o.seed, "random seed");
  cm->add_option("--jobs", o.jobs, "worker threads");

  auto* orc = app.add_subcommand("oracle", "exact Hamiltonicity and minimum path cover");
  orc->add_option("--file", o.file, "edge-list file")->required();

  auto* ex = app.add_subcommand("expand", "check the expansion condition on E1");
  add_instance_flags(ex, o);
  ex->add_option("--file", o.file, "instance file");
  bool exact = false;
  bool sampled = false;
  int x_max = 3;
  int size_cap = 20;
  std::int64_t expand_trials = 10000;
  ex->add_flag("--exact", exact, "enumerate all sets up to --xmax");
  ex->add_flag("--sampled", sampled, "grow random connected sets");
  ex->add_option("--xmax", x_max, "largest set size in exact mode");
  ex->add_option("--size-cap", size_cap, "largest set size in sampled mode");
  ex->add_option("--trials", expand_trials, "sampled sets");
  ex->add_option("--out", o.out, "CSV of violating sets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const InstanceFile inst = obtain_instance(o);
      if (o.out.empty()) {
        write_instance(std::cout, inst.e1, inst.e2);
      } else {
        auto out = open_out(o.out);
        write_instance(out, inst.e1, inst.e2);
      }
    } else if (tg->parsed()) {
      const InstanceFile inst = obtain_instance(o);
      Rng rng = derive_stream(o.seed, 0, 1);
      TwoGreedy greedy(inst.e1);
      greedy.run(rng);
      const auto stats = trajectory_stats(greedy.trajectory(), inst.e1.edge_count(),
                                          inst.e1.vertex_count(), o.epsilon);
      const auto comps = matching_components(greedy.matching(), inst.e1.vertex_count());
      const PathCover raw = cover_from_matching(greedy.matching(), inst.e1.vertex_count());
      const PathCover merged = greedy_merge(raw, inst.e1);
      std::cout << "steps " << greedy.trajectory().size() << "\ntau " << stats.tau
                << "\nzeta_max " << stats.zeta_max << "\nkappa1 " << comps.kappa1
                << "\nkappa2 " << comps.kappa2 << "\ncover " << raw.size() << "\nmerged_cover "
                << merged.size() << '\n';
      if (!trace_path.empty()) {
        auto out = open_out(trace_path);
        write_trajectory_csv(out, greedy.trajectory());
      }
      if (!cover_path.empty()) {
        auto out = open_out(cover_path);
        write_cover(out, merged);
      }
    } else if (ham->parsed()) {
      ExperimentConfig cfg = to_config(o);
      std::vector<RunRecord> records;
      if (!o.file.empty()) {
        const InstanceFile inst = load_instance(o.file);
        cfg.n = inst.e1.vertex_count();
        // Density of the file's E1 u E2, for the record only.
        cfg.c = static_cast<double>(inst.e1.edge_count() + static_cast<std::int64_t>(inst.e2.size())) /
                std::max<Vertex>(cfg.n, 1);
        for (std::int64_t t = 0; t < cfg.trials; ++t) {
          Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(t));
          RunRecord r = run_on_instance(inst.e1, inst.e2, cfg, rng).record;
          r.trial = t;
          records.push_back(std::move(r));
        }
        cfg.out.clear();
      } else {
        const std::string out_path = cfg.out;
        cfg.out.clear();
        records = run_pipeline(cfg);
        cfg.out = out_path;
      }
      if (o.out.empty()) {
        write_records_csv(std::cout, records, cfg.record_timing);
      } else {
        auto out = open_out(o.out);
        write_records_csv(out, records, cfg.record_timing);
      }
    } else if (sw->parsed()) {
      std::vector<Vertex> ns;
      std::vector<double> cs;
      for (const auto& s : split(n_list)) ns.push_back(static_cast<Vertex>(std::stol(s)));
      for (const auto& s : split(c_list)) cs.push_back(std::stod(s));
      ExperimentConfig cfg = to_config(o);
      cfg.out.clear();
      const auto rows = sweep(ns, cs, cfg);
      if (o.out.empty()) {
        write_sweep_csv(std::cout, rows);
      } else {
        auto out = open_out(o.out);
        write_sweep_csv(out, rows);
      }
    } else if (cm->parsed()) {
      std::cout << "isa " << simd::isa_name(simd::active_isa()) << '\n';
      const ModelReport report = check_model(o.n, o.c, samples, o.seed, o.jobs);
      write_model_report(std::cout, report);
      return report.all_passed() ? 0 : 1;
    } else if (orc->parsed()) {
      std::ifstream in(o.file);
      if (!in) throw ParseError("cannot open " + o.file);
      const MultiGraph g = read_graph(in);
      const OracleResult r = exact_hamiltonian(g);
      std::cout << "hamiltonian " << (r.hamiltonian ? "yes" : "no") << '\n';
      if (r.witness_cycle) {
        std::cout << "cycle";
        for (const Vertex v : *r.witness_cycle) std::cout << ' ' << v;
        std::cout << '\n';
      }
      if (g.vertex_count() <= kMaxOracleCoverN) {
        std::cout << "min_path_cover " << exact_min_path_cover(g) << '\n';
      }
    } else if (ex->parsed()) {
      const InstanceFile inst = obtain_instance(o);
      ExpansionReport report;
      if (sampled && !exact) {
        Rng rng = derive_stream(o.seed, 0, 2);
        report = check_sampled(inst.e1, size_cap, expand_trials, rng);
      } else {
        report = check_exact(inst.e1, x_max);
      }
      std::cout << "mode " << (report.mode == ExpansionMode::Exact ? "exact" : "sampled")
                << "\nchecked_sets " << report.checked_sets << "\nviolations "
                << report.violation_count << '\n';
      if (!o.out.empty()) {
        auto out = open_out(o.out);
        out << "size,x,neighbors,edges,vertices\n";
        for (const auto& x : report.violations) {
          const SetExpansion m = measure_set(inst.e1, x);
          out << x.size() << ',' << m.x << ',' << m.neighbors << ',' << m.edges << ',';
          for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i];
          out << '\n';
        }
      }
      return report.violation_count == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
