#include "jofc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace jofc {

DissimilarityKind parse_dissimilarity(std::string_view name)
{
  if (name == "shortest_path" || name == "sp") return DissimilarityKind::shortest_path;
  if (name == "weighted_dice" || name == "dice") return DissimilarityKind::weighted_dice;
  throw Error("unknown dissimilarity '" + std::string(name) + "' (shortest_path, weighted_dice)");
}

MatcherKind parse_matcher(std::string_view name)
{
  if (name == "hungarian") return MatcherKind::hungarian;
  if (name == "gap") return MatcherKind::gap;
  throw Error("unknown matcher '" + std::string(name) + "' (hungarian, gap)");
}

std::string to_string(DissimilarityKind kind)
{
  return kind == DissimilarityKind::shortest_path ? "shortest_path" : "weighted_dice";
}

std::string to_string(MatcherKind kind) { return kind == MatcherKind::hungarian ? "hungarian" : "gap"; }

void PipelineConfig::validate() const
{
  if (!(smacof.w > 0.0 && smacof.w < 1.0)) throw Error("config: w must lie in (0, 1)");
  if (dim && *dim < 1) throw Error("config: dim must be >= 1");
  if (!dim && !(alpha > 0.0 && alpha < 1.0)) throw Error("config: alpha must lie in (0, 1)");
  if (max_dim < 1 || unseeded_dim < 1) throw Error("config: dimensions must be >= 1");
  if (smacof.max_iters < 1 || smacof.n_restarts < 1) throw Error("config: max_iters and n_restarts must be >= 1");
  if (!(smacof.rel_stress_tol >= 0.0)) throw Error("config: rel_stress_tol must be >= 0");
}

DissimilarityMatrix compute_dissimilarity(const Graph& g, DissimilarityKind kind)
{
  const DissimilarityMatrix raw =
      kind == DissimilarityKind::shortest_path ? shortest_path_dissimilarity(g) : weighted_dice_dissimilarity(g);
  return normalize(raw);
}

Matching match_points(const PointBlock& y1, const PointBlock& y2, const PipelineConfig& cfg)
{
  if (y1.vertices.empty() || y2.vertices.empty()) return {};
  CostMatrix cost = cross_distances(y1.points, y2.points);
  Matching local;
  if (cfg.matcher == MatcherKind::hungarian)
    local = hungarian(cost.array().square().matrix());
  else
    local = gap_match(cost, cfg.gap);
  std::vector<VertexPair> pairs;
  pairs.reserve(local.size());
  for (auto [a, b] : local.pairs())
    pairs.emplace_back(y1.vertices[static_cast<std::size_t>(a)], y2.vertices[static_cast<std::size_t>(b)]);
  return Matching(std::move(pairs));
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
auto timed(const char* stage, double& seconds, F&& body)
{
  const auto start = Clock::now();
  struct Stop {
    Clock::time_point start;
    double& seconds;
    ~Stop() { seconds = std::chrono::duration<double>(Clock::now() - start).count(); }
  } stop{start, seconds};
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

PointBlock embed_alone(const DissimilarityMatrix& d, Index dim, const SmacofOptions& opts)
{
  const Index n = d.size();
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
  PointBlock out;
  out.vertices.resize(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) out.vertices[static_cast<std::size_t>(v)] = v;
  out.points = smacof(d.values(), ones, dim, opts).points;
  return out;
}

} // namespace

JofcResult jofc_match(const Graph& g1, const Graph& g2, const Seeding& s, const PipelineConfig& cfg)
{
  try {
    cfg.validate();
    if (s.n1() != g1.size() || s.n2() != g2.size()) throw Error("seeding does not match the graph sizes");
  } catch (const Error& e) {
    throw StageError("config", e.what());
  }
  JofcResult out;
  StageTimings& t = out.timings;

  const auto [d1, d2] = timed("dissimilarity", t.dissimilarity, [&] {
    return std::pair{compute_dissimilarity(g1, cfg.dissimilarity), compute_dissimilarity(g2, cfg.dissimilarity)};
  });

  if (s.empty()) {
    out.dim = cfg.dim.value_or(cfg.unseeded_dim);
    out.warnings.push_back("no seeds: graphs embedded independently, matching is chance level");
    out.embedding = timed("smacof", t.embed, [&] {
      EmbeddingConfig e;
      e.dim = out.dim;
      e.seeds1.points.resize(0, out.dim);
      e.seeds2.points.resize(0, out.dim);
      SmacofOptions second = cfg.smacof;
      second.rng_seed = cfg.smacof.rng_seed + 1;
      e.unseeded1 = embed_alone(d1, out.dim, cfg.smacof);
      e.unseeded2 = embed_alone(d2, out.dim, second);
      return e;
    });
    out.matching = timed("assignment", t.assign, [&] {
      return match_points(out.embedding.unseeded1, out.embedding.unseeded2, cfg);
    });
    return out;
  }

  const OmnibusMatrix omni = timed("omnibus", t.omnibus, [&] { return build_omnibus(d1, d2, s); });

  if (cfg.dim) {
    out.dim = *cfg.dim;
  } else {
    out.automatic_dim = true;
    const DimensionSelection sel = timed("dimension selection", t.dimension, [&] {
      return scan_dimensions(omni, s, cfg.alpha, cfg.smacof, cfg.max_dim);
    });
    out.recovery = sel.recovery;
    out.dim = sel.dim;
    if (out.dim == 0) {
      const auto best = std::max_element(sel.recovery.begin(), sel.recovery.end());
      out.dim = static_cast<Index>(best - sel.recovery.begin()) + 1;
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "dimension selection: no d <= %lld passed; using d = %lld with seed recovery %.4g",
                    static_cast<long long>(cfg.max_dim), static_cast<long long>(out.dim), *best);
      out.warnings.emplace_back(buf);
    }
  }

  const EmbeddingConfig anchors = timed("smacof", t.embed, [&] {
    return smacof(omni, s, jofc_weights(s, cfg.smacof.w), out.dim, cfg.smacof);
  });
  out.embedding = timed("out-of-sample embedding", t.oos, [&] { return oos_embed(anchors, d1, d2, s, cfg.smacof); });
  out.matching = timed("assignment", t.assign, [&] {
    return match_points(out.embedding.unseeded1, out.embedding.unseeded2, cfg);
  });
  return out;
}

} // namespace jofc
