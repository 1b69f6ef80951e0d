#pragma once

#include "jofc/dissimilarity.hpp"
#include "jofc/seeding.hpp"
#include "jofc/smacof.hpp"
#include "jofc/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jofc {

/// Symmetric, nonnegative, zero-diagonal pair weights over the omnibus
/// ordering (seeds1 then seeds2); zero marks a missing dissimilarity.
using WeightMatrix = Eigen::MatrixXd;

/// Weights that make the omnibus stress equal
///   w (eps2_F1 + eps2_F2 + eps2_S) + (1 - w) eps2_C:
/// w within each graph, w/2 on S', (1-w)/2 on S, 0 on unknown pairs. The
/// halving offsets the factor 2 the omnibus stress puts on cross-graph terms.
WeightMatrix jofc_weights(const Seeding& s, double w);

/// Per-pair weights seen by the majorizer: `weights` with its cross-graph
/// block doubled.
Eigen::MatrixXd omnibus_pair_weights(const OmnibusMatrix& d, const WeightMatrix& weights);

/// sigma(X) = sum_{within} w (d - D)^2 + 2 sum_{cross} w (d - D)^2, rows of
/// X in omnibus order.
double omnibus_stress(const OmnibusMatrix& d, const WeightMatrix& weights, const Eigen::MatrixXd& points);

struct StressReport {
  double fidelity1 = 0.0;        ///< eps2_F1
  double fidelity2 = 0.0;        ///< eps2_F2
  double commensurability = 0.0; ///< eps2_C
  double separability = 0.0;     ///< eps2_S
  double stress = 0.0;           ///< sigma under the weights used
};

StressReport stress_report(const OmnibusMatrix& d, const Seeding& s, const WeightMatrix& weights,
                           const Eigen::MatrixXd& points);

/// Points of one vertex block; row k is vertex `vertices[k]`.
struct PointBlock {
  std::vector<Index> vertices;
  Eigen::MatrixXd points;
};

struct EmbeddingConfig {
  Index dim = 0;
  PointBlock seeds1, seeds2, unseeded1, unseeded2;
  StressReport stress;

  /// Seed rows in omnibus order.
  Eigen::MatrixXd seed_points() const;
};

/// Embeds the seeds by weighted raw-stress SMACOF on the omnibus matrix.
EmbeddingConfig smacof(const OmnibusMatrix& d, const Seeding& s, const WeightMatrix& weights, Index dim,
                       const SmacofOptions& opts);

/// Out-of-sample placement of the unseeded vertices with the seeds held
/// fixed. Seed-to-unseeded weights are 1 within each graph; all weights
/// between unseeded vertices are 0, so each point is placed independently by
/// majorization started from the least-squares (Gower) solution and
/// opts.n_restarts - 1 Gaussian perturbations of it.
EmbeddingConfig oos_embed(const EmbeddingConfig& anchors, const DissimilarityMatrix& d1,
                          const DissimilarityMatrix& d2, const Seeding& s, const SmacofOptions& opts);

/// Places a single point against fixed anchors; exposed for testing.
Eigen::VectorXd place_point(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& targets,
                            const SmacofOptions& opts, Rng& rng);

/// Out-of-sample stress of the unseeded blocks of `config`.
double oos_stress(const EmbeddingConfig& config, const DissimilarityMatrix& d1, const DissimilarityMatrix& d2);

/// Step-iv score at one dimension: fraction of seeds whose matched set under
/// the minimum-cost edge cover of the embedded seed distances equals their
/// seeding set.
double seed_recovery(const EmbeddingConfig& seeds, const Seeding& s);

struct DimensionSelection {
  Index dim = 0;
  /// recovery[k] = seed_recovery at dimension k + 1, for every tested d.
  std::vector<double> recovery;
};

/// Tries d = 1..max_dim in order and stops at the first d with
/// seed_recovery > 1 - alpha (omnibus embedded with jofc_weights(s, opts.w)).
/// dim stays 0 when no tested d passes.
DimensionSelection scan_dimensions(const OmnibusMatrix& d, const Seeding& s, double alpha,
                                   const SmacofOptions& opts, Index max_dim = 20);

/// scan_dimensions, throwing Error when no d passes.
DimensionSelection select_dimension(const OmnibusMatrix& d, const Seeding& s, double alpha,
                                    const SmacofOptions& opts, Index max_dim = 20);

/// CSV rows "block,vertex,x1,...,xd" with 1-based vertex ids.
void write_embedding_csv(const EmbeddingConfig& config, std::ostream& out);
/// "key = value" lines.
void write_stress_report(const StressReport& report, std::ostream& out);

} // namespace jofc
