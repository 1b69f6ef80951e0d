// Command-line front end: match two graphs, run the simulations, extract a
// connected subgraph, or run the SGM baseline.

#include "jofc/experiment.hpp"
#include "jofc/pipeline.hpp"
#include "jofc/sgm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace jofc;

struct GraphInput {
  std::string path;
  bool directed = false;
  bool loopy = false;
};

std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

Seeding load_seeds(const std::string& path, const Graph& g1, const Graph& g2)
{
  if (path.empty()) return Seeding(g1.size(), g2.size(), Matching{});
  return load_seeding(path, g1.size(), g2.size());
}

void add_graph_options(CLI::App* cmd, GraphInput& g1, GraphInput& g2, std::string& seeds)
{
  cmd->add_option("--g1", g1.path, "Edge list of graph 1")->required()->check(CLI::ExistingFile);
  cmd->add_option("--g2", g2.path, "Edge list of graph 2")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seeds", seeds, "Seed pairs, 'i j' per line (1-based)")->check(CLI::ExistingFile);
  cmd->add_flag("--directed", g1.directed, "Read both graphs as directed");
  cmd->add_flag("--loopy", g1.loopy, "Allow self-loops");
}

int run_match(const GraphInput& in1, const GraphInput& in2, const std::string& seeds, PipelineConfig cfg,
              const std::string& dim_text, const std::string& out_path, const std::string& embedding_path,
              const std::string& stress_path)
{
  const Graph g1 = load_edge_list(in1.path, in1.directed, in1.loopy);
  const Graph g2 = load_edge_list(in2.path, in1.directed, in1.loopy);
  const Seeding s = load_seeds(seeds, g1, g2);
  if (dim_text == "auto")
    cfg.dim.reset();
  else
    cfg.dim = std::stoll(dim_text);

  const JofcResult r = jofc_match(g1, g2, s, cfg);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << "dimension: " << r.dim << (r.automatic_dim ? " (selected)" : "") << '\n';

  if (out_path.empty()) {
    write_matching(r.matching, std::cout, in1.path, in2.path);
  } else {
    auto out = open_output(out_path);
    write_matching(r.matching, out, in1.path, in2.path);
  }
  if (!embedding_path.empty()) {
    auto out = open_output(embedding_path);
    write_embedding_csv(r.embedding, out);
  }
  if (!stress_path.empty()) {
    auto out = open_output(stress_path);
    out << "dim = " << r.dim << '\n';
    write_stress_report(r.embedding.stress, out);
  }
  return 0;
}

int run_simulation(bool clone, const std::string& config_path, const std::string& prefix, int threads)
{
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
  const ExperimentResult result = clone ? run_clone_experiment(cfg) : run_bitflip_experiment(cfg);
  {
    auto out = open_output(prefix + "_replicates.csv");
    write_replicates_csv(result, cfg, out);
  }
  {
    auto out = open_output(prefix + "_aggregate.csv");
    write_aggregate_csv(result, cfg, out);
  }
  {
    auto out = open_output(prefix + "_timings.csv");
    write_timings_csv(result, out);
  }
  char line[160];
  for (const auto& a : result.aggregates) {
    std::snprintf(line, sizeof line, "m=%-4lld rho=%-5g %-10s R=%.4f +- %.4f (2 se)\n", static_cast<long long>(a.m),
                  a.rho, to_string(a.algorithm).c_str(), a.mean_ratio, 2.0 * a.se_ratio);
    std::cerr << line;
  }
  return 0;
}

int run_select_component(const GraphInput& in, Index size, std::uint64_t seed, const std::string& out_path,
                         const std::string& map_path)
{
  const Graph g = load_edge_list(in.path, in.directed, in.loopy);
  std::vector<Index> vertices;
  if (size > 0) {
    Rng rng = make_stream(seed);
    vertices = sample_connected_vertices(g, size, rng);
  } else {
    auto components = connected_components(g);
    vertices = *std::max_element(components.begin(), components.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
  }
  save_edge_list(g.induced(vertices), out_path);
  if (!map_path.empty()) {
    auto map = open_output(map_path);
    map << "# new original\n";
    for (std::size_t k = 0; k < vertices.size(); ++k) map << k + 1 << ' ' << vertices[k] + 1 << '\n';
  }
  std::cerr << "selected " << vertices.size() << " of " << g.size() << " vertices\n";
  return 0;
}

int run_sgm(const GraphInput& in1, const GraphInput& in2, const std::string& seeds, bool binarize, bool undirect,
            const SgmOptions& opts, const std::string& out_path)
{
  Graph g1 = load_edge_list(in1.path, in1.directed, in1.loopy);
  Graph g2 = load_edge_list(in2.path, in1.directed, in1.loopy);
  if (undirect) {
    g1 = g1.symmetrized();
    g2 = g2.symmetrized();
  }
  if (binarize) {
    g1 = g1.binarized();
    g2 = g2.binarized();
  }
  const Seeding s = load_seeds(seeds, g1, g2);
  const SgmResult r = sgm(g1, g2, s, opts);
  std::cerr << "iterations: " << r.iterations << ", relaxed objective: " << r.objective.back() << '\n';

  auto emit = [&](std::ostream& out) {
    out << "# binarize = " << (binarize ? "true" : "false") << '\n';
    out << "# undirect = " << (undirect ? "true" : "false") << '\n';
    write_matching(r.matching, out, in1.path, in2.path);
  };
  if (out_path.empty()) {
    emit(std::cout);
  } else {
    auto out = open_output(out_path);
    emit(out);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Seeded graph matching by joint optimization of fidelity and commensurability"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  GraphInput in1, in2;
  std::string seeds, out_path;

  auto* match = app.add_subcommand("match", "Match two graphs given seeds");
  add_graph_options(match, in1, in2, seeds);
  PipelineConfig cfg;
  std::string dissimilarity = "shortest_path", matcher = "hungarian", dim_text = "auto", embedding_path, stress_path;
  match->add_option("--dissimilarity", dissimilarity, "shortest_path or weighted_dice");
  match->add_option("--matcher", matcher, "hungarian or gap");
  match->add_option("--dim", dim_text, "Embedding dimension or 'auto'");
  match->add_option("--alpha", cfg.alpha, "Seed recovery slack for automatic dimension");
  match->add_option("--max-dim", cfg.max_dim, "Largest dimension tried");
  match->add_option("--w", cfg.smacof.w, "Fidelity weight in (0,1)");
  match->add_option("--max-iters", cfg.smacof.max_iters, "SMACOF iteration cap");
  match->add_option("--tol", cfg.smacof.rel_stress_tol, "Relative stress decrease tolerance");
  match->add_option("--restarts", cfg.smacof.n_restarts, "SMACOF starts");
  match->add_option("--seed", cfg.smacof.rng_seed, "Random seed");
  match->add_option("-o,--out", out_path, "Matching output (stdout if omitted)");
  match->add_option("--embedding", embedding_path, "Embedding CSV output");
  match->add_option("--stress", stress_path, "Stress report output");

  std::string config_path, prefix = "experiment";
  int threads = -1;
  auto* bitflip = app.add_subcommand("simulate-bitflip", "Bit-flip simulation over an (m, rho) grid");
  auto* clone = app.add_subcommand("simulate-clone", "Many-to-one clone simulation over an (m, rho) grid");
  for (auto* cmd : {bitflip, clone}) {
    cmd->add_option("-c,--config", config_path, "Experiment config (key = value)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", prefix, "Output prefix for _replicates.csv, _aggregate.csv, _timings.csv");
    cmd->add_option("--threads", threads, "Worker threads, overrides the config (0 = all cores)");
  }

  GraphInput component_in;
  Index size = 0;
  std::uint64_t component_seed = 0;
  std::string map_path;
  auto* component = app.add_subcommand("select-component", "Extract a connected subgraph");
  component->add_option("--graph", component_in.path, "Edge list")->required()->check(CLI::ExistingFile);
  component->add_flag("--directed", component_in.directed, "Read as directed");
  component->add_flag("--loopy", component_in.loopy, "Allow self-loops");
  component->add_option("--size", size, "Vertices to keep; largest component if omitted");
  component->add_option("--seed", component_seed, "Random seed");
  component->add_option("-o,--out", out_path, "Edge list output")->required();
  component->add_option("--map", map_path, "Vertex map output ('new original' per line)");

  GraphInput sgm_in1, sgm_in2;
  std::string sgm_seeds, sgm_out;
  bool binarize = false, undirect = false;
  SgmOptions sgm_opts;
  auto* sgm_cmd = app.add_subcommand("sgm", "Frank-Wolfe seeded graph matching baseline");
  add_graph_options(sgm_cmd, sgm_in1, sgm_in2, sgm_seeds);
  sgm_cmd->add_flag("--binarize", binarize, "Drop edge weights");
  sgm_cmd->add_flag("--undirect", undirect, "Drop edge directions");
  sgm_cmd->add_option("--max-iters", sgm_opts.max_iters, "Frank-Wolfe iteration cap");
  sgm_cmd->add_option("-o,--out", sgm_out, "Matching output (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (match->parsed()) {
      cfg.dissimilarity = parse_dissimilarity(dissimilarity);
      cfg.matcher = parse_matcher(matcher);
      return run_match(in1, in2, seeds, cfg, dim_text, out_path, embedding_path, stress_path);
    }
    if (bitflip->parsed()) return run_simulation(false, config_path, prefix, threads);
    if (clone->parsed()) return run_simulation(true, config_path, prefix, threads);
    if (component->parsed()) return run_select_component(component_in, size, component_seed, out_path, map_path);
    if (sgm_cmd->parsed()) return run_sgm(sgm_in1, sgm_in2, sgm_seeds, binarize, undirect, sgm_opts, sgm_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
