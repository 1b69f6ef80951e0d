#include "jofc/embedding.hpp"

#include "jofc/assignment.hpp"
#include "jofc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace jofc {

WeightMatrix jofc_weights(const Seeding& s, double w)
{
  if (!(w > 0.0 && w < 1.0)) throw Error("jofc_weights: w must lie in (0, 1)");
  const Index s1 = s.s1(), s2 = s.s2();
  WeightMatrix weights = WeightMatrix::Constant(s1 + s2, s1 + s2, w);
  for (Index b = 0; b < s2; ++b)
    for (Index a = 0; a < s1; ++a) {
      const Index i = s.seeds1()[static_cast<std::size_t>(a)];
      const Index j = s.seeds2()[static_cast<std::size_t>(b)];
      double cross = w / 2.0;
      if (s.matched(i, j))
        cross = (1.0 - w) / 2.0;
      else if (s.is_unknown(i, j))
        cross = 0.0;
      weights(a, s1 + b) = weights(s1 + b, a) = cross;
    }
  weights.diagonal().setZero();
  return weights;
}

Eigen::MatrixXd omnibus_pair_weights(const OmnibusMatrix& d, const WeightMatrix& weights)
{
  if (weights.rows() != d.size() || weights.cols() != d.size())
    throw Error("omnibus weights do not match the omnibus matrix");
  Eigen::MatrixXd pair = weights;
  pair.topRightCorner(d.s1, d.s2) *= 2.0;
  pair.bottomLeftCorner(d.s2, d.s1) *= 2.0;
  return pair;
}

double omnibus_stress(const OmnibusMatrix& d, const WeightMatrix& weights, const Eigen::MatrixXd& points)
{
  return raw_stress(d.values, omnibus_pair_weights(d, weights), points);
}

StressReport stress_report(const OmnibusMatrix& d, const Seeding& s, const WeightMatrix& weights,
                           const Eigen::MatrixXd& points)
{
  StressReport report;
  const Index s1 = d.s1, s2 = d.s2;
  auto squared_error = [&](Index a, Index b) {
    const double r = (points.row(a) - points.row(b)).norm() - d.values(a, b);
    return r * r;
  };
  for (Index b = 0; b < s1; ++b)
    for (Index a = 0; a < b; ++a) report.fidelity1 += squared_error(a, b);
  for (Index b = 0; b < s2; ++b)
    for (Index a = 0; a < b; ++a) report.fidelity2 += squared_error(s1 + a, s1 + b);
  for (Index b = 0; b < s2; ++b)
    for (Index a = 0; a < s1; ++a) {
      const Index i = s.seeds1()[static_cast<std::size_t>(a)];
      const Index j = s.seeds2()[static_cast<std::size_t>(b)];
      if (s.matched(i, j))
        report.commensurability += squared_error(a, s1 + b);
      else if (!s.is_unknown(i, j))
        report.separability += squared_error(a, s1 + b);
    }
  report.stress = omnibus_stress(d, weights, points);
  return report;
}

Eigen::MatrixXd EmbeddingConfig::seed_points() const
{
  Eigen::MatrixXd out(seeds1.points.rows() + seeds2.points.rows(), dim);
  out << seeds1.points, seeds2.points;
  return out;
}

EmbeddingConfig smacof(const OmnibusMatrix& d, const Seeding& s, const WeightMatrix& weights, Index dim,
                       const SmacofOptions& opts)
{
  if (d.s1 != s.s1() || d.s2 != s.s2()) throw Error("smacof: omnibus matrix does not match the seeding");
  const auto fit = smacof(d.values, omnibus_pair_weights(d, weights), dim, opts);
  EmbeddingConfig out;
  out.dim = dim;
  out.seeds1 = {s.seeds1(), fit.points.topRows(d.s1)};
  out.seeds2 = {s.seeds2(), fit.points.bottomRows(d.s2)};
  out.unseeded1.points.resize(0, dim);
  out.unseeded2.points.resize(0, dim);
  out.stress = stress_report(d, s, weights, fit.points);
  return out;
}

namespace {

double point_stress(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& targets, const Eigen::VectorXd& y)
{
  double total = 0.0;
  for (Index i = 0; i < anchors.rows(); ++i) {
    const double r = (anchors.row(i).transpose() - y).norm() - targets(i);
    total += r * r;
  }
  return total;
}

/// Least-squares solution of |y - a_i|^2 = t_i^2 after eliminating |y|^2.
Eigen::VectorXd gower_start(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& targets)
{
  const Eigen::RowVectorXd centroid = anchors.colwise().mean();
  if (anchors.rows() < 2) return centroid.transpose();
  const Eigen::MatrixXd centered = anchors.rowwise() - centroid;
  const Eigen::VectorXd norms = centered.rowwise().squaredNorm();
  const Eigen::VectorXd t2 = targets.array().square().matrix();
  const Eigen::VectorXd rhs = (norms.array() - norms.mean() - (t2.array() - t2.mean())).matrix() / 2.0;
  const Eigen::VectorXd y = centered.completeOrthogonalDecomposition().solve(rhs);
  return y + centroid.transpose();
}

Eigen::VectorXd majorize_point(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& targets, Eigen::VectorXd y,
                               const SmacofOptions& opts, double& stress)
{
  const Index k = anchors.rows();
  // Anchors within this distance count as coincident with y.
  const double tiny = 1e-9 * std::max(targets.maxCoeff(), 1e-12);
  stress = point_stress(anchors, targets, y);
  for (int it = 0; it < opts.max_iters; ++it) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(y.size());
    for (Index i = 0; i < k; ++i) {
      const Eigen::VectorXd diff = y - anchors.row(i).transpose();
      const double dist = diff.norm();
      next += anchors.row(i).transpose();
      if (dist > tiny) next += targets(i) / dist * diff;
    }
    next /= static_cast<double>(k);
    const double next_stress = point_stress(anchors, targets, next);
    const double previous = stress;
    y = std::move(next);
    stress = next_stress;
    if (previous - next_stress <= opts.rel_stress_tol * previous) break;
  }
  return y;
}

PointBlock embed_block(const Eigen::MatrixXd& anchors, const DissimilarityMatrix& delta,
                       const std::vector<Index>& seeds, const std::vector<Index>& unseeded,
                       const SmacofOptions& opts, const char* name)
{
  PointBlock out{unseeded, Eigen::MatrixXd(static_cast<Index>(unseeded.size()), anchors.cols())};
  if (unseeded.empty()) return out;
  if (seeds.empty())
    throw Error(std::string("oos_embed: ") + name + " has unseeded vertices but no anchors");
  parallel_for(unseeded.size(), 1, [&](std::size_t k) {
    Eigen::VectorXd targets(static_cast<Index>(seeds.size()));
    for (std::size_t a = 0; a < seeds.size(); ++a) targets(static_cast<Index>(a)) = delta(unseeded[k], seeds[a]);
    // Shared stream for every point of both graphs.
    Rng rng = make_stream(opts.rng_seed, 0x00515e);
    out.points.row(static_cast<Index>(k)) = place_point(anchors, targets, opts, rng).transpose();
  });
  return out;
}

} // namespace

Eigen::VectorXd place_point(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& targets,
                            const SmacofOptions& opts, Rng& rng)
{
  if (anchors.rows() == 0) throw Error("place_point: no anchors");
  if (targets.size() != anchors.rows()) throw Error("place_point: one target per anchor required");
  const double spread = std::sqrt(targets.array().square().mean() / static_cast<double>(anchors.cols()));
  std::normal_distribution<double> gauss(0.0, 1.0);

  const Eigen::VectorXd gower = gower_start(anchors, targets);
  double best_stress = 0.0;
  Eigen::VectorXd best = majorize_point(anchors, targets, gower, opts, best_stress);
  for (int restart = 1; restart < opts.n_restarts; ++restart) {
    Eigen::VectorXd start = gower;
    for (Index c = 0; c < start.size(); ++c) start(c) += spread * gauss(rng);
    double stress = 0.0;
    Eigen::VectorXd y = majorize_point(anchors, targets, std::move(start), opts, stress);
    if (stress < best_stress - 1e-12 * best_stress) {
      best_stress = stress;
      best = std::move(y);
    }
  }
  return best;
}

EmbeddingConfig oos_embed(const EmbeddingConfig& anchors, const DissimilarityMatrix& d1,
                          const DissimilarityMatrix& d2, const Seeding& s, const SmacofOptions& opts)
{
  if (d1.size() != s.n1() || d2.size() != s.n2()) throw Error("oos_embed: dissimilarity sizes do not match");
  if (anchors.seeds1.vertices != s.seeds1() || anchors.seeds2.vertices != s.seeds2())
    throw Error("oos_embed: anchors do not match the seeding");
  EmbeddingConfig out = anchors;
  out.unseeded1 = embed_block(anchors.seeds1.points, d1, s.seeds1(), s.unseeded1(), opts, "graph 1");
  out.unseeded2 = embed_block(anchors.seeds2.points, d2, s.seeds2(), s.unseeded2(), opts, "graph 2");
  return out;
}

double oos_stress(const EmbeddingConfig& config, const DissimilarityMatrix& d1, const DissimilarityMatrix& d2)
{
  double total = 0.0;
  auto block = [&total](const PointBlock& seeds, const PointBlock& free, const DissimilarityMatrix& delta) {
    for (std::size_t a = 0; a < seeds.vertices.size(); ++a)
      for (std::size_t u = 0; u < free.vertices.size(); ++u) {
        const double dist = (seeds.points.row(static_cast<Index>(a)) - free.points.row(static_cast<Index>(u))).norm();
        const double r = dist - delta(seeds.vertices[a], free.vertices[u]);
        total += r * r;
      }
  };
  block(config.seeds1, config.unseeded1, d1);
  block(config.seeds2, config.unseeded2, d2);
  return total;
}

double seed_recovery(const EmbeddingConfig& seeds, const Seeding& s)
{
  const Index s1 = s.s1(), s2 = s.s2();
  const Matching cover = min_cost_edge_cover(cross_distances(seeds.seeds1.points, seeds.seeds2.points));
  const auto found1 = cover.forward(s1), found2 = cover.backward(s2);

  Index agree = 0;
  for (Index a = 0; a < s1; ++a) {
    std::vector<Index> expected;
    for (Index j : s.partners1(s.seeds1()[static_cast<std::size_t>(a)])) expected.push_back(s.position2(j));
    if (found1[static_cast<std::size_t>(a)] == expected) ++agree;
  }
  for (Index b = 0; b < s2; ++b) {
    std::vector<Index> expected;
    for (Index i : s.partners2(s.seeds2()[static_cast<std::size_t>(b)])) expected.push_back(s.position1(i));
    if (found2[static_cast<std::size_t>(b)] == expected) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(s1 + s2);
}

DimensionSelection scan_dimensions(const OmnibusMatrix& d, const Seeding& s, double alpha,
                                   const SmacofOptions& opts, Index max_dim)
{
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("select_dimension: alpha must lie in (0, 1)");
  if (max_dim < 1) throw Error("select_dimension: max_dim must be >= 1");
  const WeightMatrix weights = jofc_weights(s, opts.w);
  DimensionSelection out;
  for (Index dim = 1; dim <= max_dim; ++dim) {
    const double score = seed_recovery(smacof(d, s, weights, dim, opts), s);
    out.recovery.push_back(score);
    if (score > 1.0 - alpha) {
      out.dim = dim;
      break;
    }
  }
  return out;
}

DimensionSelection select_dimension(const OmnibusMatrix& d, const Seeding& s, double alpha,
                                    const SmacofOptions& opts, Index max_dim)
{
  DimensionSelection out = scan_dimensions(d, s, alpha, opts, max_dim);
  if (out.dim == 0)
    throw Error("select_dimension: no dimension up to " + std::to_string(max_dim) +
                " recovers more than " + std::to_string(1.0 - alpha) + " of the seeding");
  return out;
}

void write_embedding_csv(const EmbeddingConfig& config, std::ostream& out)
{
  out << "block,vertex";
  for (Index c = 0; c < config.dim; ++c) out << ",x" << c + 1;
  out << '\n';
  char buf[64];
  auto block = [&](const char* name, const PointBlock& b) {
    for (std::size_t k = 0; k < b.vertices.size(); ++k) {
      out << name << ',' << b.vertices[k] + 1;
      for (Index c = 0; c < config.dim; ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", b.points(static_cast<Index>(k), c));
        out << ',' << buf;
      }
      out << '\n';
    }
  };
  block("seed1", config.seeds1);
  block("seed2", config.seeds2);
  block("unseeded1", config.unseeded1);
  block("unseeded2", config.unseeded2);
}

void write_stress_report(const StressReport& report, std::ostream& out)
{
  char buf[64];
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << key << " = " << buf << '\n';
  };
  line("eps2_F1", report.fidelity1);
  line("eps2_F2", report.fidelity2);
  line("eps2_C", report.commensurability);
  line("eps2_S", report.separability);
  line("stress", report.stress);
}

} // namespace jofc
