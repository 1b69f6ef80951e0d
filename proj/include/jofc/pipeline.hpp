#pragma once

#include "jofc/assignment.hpp"
#include "jofc/dissimilarity.hpp"
#include "jofc/embedding.hpp"
#include "jofc/graph.hpp"
#include "jofc/seeding.hpp"
#include "jofc/smacof.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jofc {

enum class DissimilarityKind { shortest_path, weighted_dice };
enum class MatcherKind { hungarian, gap };

DissimilarityKind parse_dissimilarity(std::string_view name);
MatcherKind parse_matcher(std::string_view name);
std::string to_string(DissimilarityKind kind);
std::string to_string(MatcherKind kind);

struct PipelineConfig {
  DissimilarityKind dissimilarity = DissimilarityKind::shortest_path;
  /// Fixed embedding dimension; automatic selection when empty.
  std::optional<Index> dim;
  double alpha = 0.05;
  Index max_dim = 20;
  MatcherKind matcher = MatcherKind::hungarian;
  GapOptions gap;
  /// Carries w and the random seed.
  SmacofOptions smacof;
  /// Dimension used without seeds when none is fixed.
  Index unseeded_dim = 2;

  void validate() const;
};

/// Wall-clock seconds per stage.
struct StageTimings {
  double dissimilarity = 0.0;
  double omnibus = 0.0;
  double dimension = 0.0;
  double embed = 0.0;
  double oos = 0.0;
  double assign = 0.0;

  double total() const { return dissimilarity + omnibus + dimension + embed + oos + assign; }
};

struct JofcResult {
  /// Estimated matching between the unseeded vertices.
  Matching matching;
  EmbeddingConfig embedding;
  Index dim = 0;
  bool automatic_dim = false;
  /// Step-v seed recovery per tested d (automatic selection only).
  std::vector<double> recovery;
  StageTimings timings;
  std::vector<std::string> warnings;
};

DissimilarityMatrix compute_dissimilarity(const Graph& g, DissimilarityKind kind);

/// Dissimilarity, omnibus, dimension, SMACOF, out-of-sample embedding and
/// assignment. Stage failures surface as StageError. Without seeds each
/// graph is embedded on its own with unit weights, which only supports a
/// chance-level matching.
JofcResult jofc_match(const Graph& g1, const Graph& g2, const Seeding& s, const PipelineConfig& cfg);

/// Assignment stage alone: squared distances for hungarian, plain distances
/// for gap.
Matching match_points(const PointBlock& y1, const PointBlock& y2, const PipelineConfig& cfg);

} // namespace jofc
