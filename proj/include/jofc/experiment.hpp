#pragma once

#include "jofc/graph.hpp"
#include "jofc/pipeline.hpp"
#include "jofc/sgm.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jofc {

/// Matchers compared in the simulations. `chance` is a random bijection in
/// the bit-flip model and gap_match on iid uniform costs in the clone model.
enum class Algorithm { sgm, jofc_sp, jofc_dice, chance };

Algorithm parse_algorithm(std::string_view name);
std::string to_string(Algorithm algorithm);

struct ExperimentConfig {
  Index n = 100;
  double p = 0.5;
  std::vector<Index> m_grid{0, 25, 50, 75};
  std::vector<double> rho_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  int replicates = 50;
  std::vector<Algorithm> algorithms{Algorithm::sgm, Algorithm::jofc_sp, Algorithm::jofc_dice, Algorithm::chance};
  /// Shared JOFC settings; the dissimilarity comes from the algorithm and
  /// smacof.rng_seed is drawn per replicate.
  PipelineConfig pipeline;
  SgmOptions sgm;
  CloneParams clone;
  std::uint64_t rng_seed = 0;
  /// Worker threads, 0 = hardware concurrency. Results do not depend on it.
  unsigned threads = 0;

  void validate() const;
  /// Canonical "key", "value" listing of every setting except `threads`.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// "key = value" lines; '#' starts a comment, lists are comma-separated.
/// Keys: n, p, m, rho, replicates, algorithms, dim (integer or auto), alpha,
/// max_dim, unseeded_dim, w, max_iters, rel_stress_tol, n_restarts, matcher,
/// gap_attach, sgm_max_iters, sgm_step_tol, clone_success_prob, max_clones,
/// rng_seed, threads. Unlisted keys keep their defaults.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ReplicateRecord {
  Index m = 0;
  double rho = 0.0;
  Algorithm algorithm = Algorithm::chance;
  int replicate = 0;
  /// R_m for bit-flip runs; for clone runs the fraction of unseeded G2
  /// vertices matched to exactly their original.
  double ratio = 0.0;
  /// Embedding dimension used by JOFC, 0 otherwise.
  Index dim = 0;
  /// Every unseeded G1 vertex received a partner.
  bool covered = false;
  StageTimings timings;
  double seconds = 0.0;
};

struct AggregateRecord {
  Index m = 0;
  double rho = 0.0;
  Algorithm algorithm = Algorithm::chance;
  double mean_ratio = 0.0;
  /// Sample standard deviation over sqrt(n_reps).
  double se_ratio = 0.0;
  int n_reps = 0;
};

struct ExperimentResult {
  std::string kind;
  std::vector<ReplicateRecord> replicates;
  std::vector<AggregateRecord> aggregates;
};

/// Every (m, rho) cell and replicate draws G1 ~ ER(n, p), G2 = bit_flip(G1,
/// rho) under a uniformly random relabeling, and m uniform seeds; all
/// algorithms then run on that same sample.
ExperimentResult run_bitflip_experiment(const ExperimentConfig& cfg);

/// G1 ~ ER(n, p), G2 = bit_flip(clone_vertices(G1), rho) relabeled at
/// random; the m seeds of G1 are seeded together with all of their copies.
/// JOFC runs use the gap matcher; sgm is rejected.
ExperimentResult run_clone_experiment(const ExperimentConfig& cfg);

/// Groups by (m, rho, algorithm) in order of first appearance. Throws Error
/// on a group with fewer than two replicates.
std::vector<AggregateRecord> aggregate(const std::vector<ReplicateRecord>& records);

/// CSVs open with "# key = value" provenance lines.
void write_replicates_csv(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out);
void write_aggregate_csv(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out);
/// Wall-clock seconds per replicate and stage; kept apart so the other two
/// files are reproducible byte for byte.
void write_timings_csv(const ExperimentResult& result, std::ostream& out);

std::vector<ReplicateRecord> read_replicates_csv(std::istream& in);
std::vector<AggregateRecord> read_aggregate_csv(std::istream& in);

/// Throws Error unless `aggregates` equals aggregate(replicates) up to a
/// relative tolerance.
void check_aggregates(const std::vector<ReplicateRecord>& replicates,
                      const std::vector<AggregateRecord>& aggregates, double rel_tol = 1e-12);

/// Reads both CSVs and cross-checks them.
ExperimentResult load_experiment(const std::filesystem::path& replicates_csv,
                                 const std::filesystem::path& aggregate_csv);

} // namespace jofc
