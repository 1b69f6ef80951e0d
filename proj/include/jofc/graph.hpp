#pragma once

#include "jofc/matching.hpp"
#include "jofc/random.hpp"
#include "jofc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace jofc {

/// Weighted, optionally directed, optionally loopy graph stored as a dense
/// adjacency matrix; entry (i,j) is the weight of edge i -> j, 0 = no edge.
class Graph {
public:
  Graph() = default;

  /// Validates the invariants: square, finite, nonnegative, symmetric when
  /// undirected, zero diagonal when not loopy.
  Graph(Eigen::MatrixXd weights, bool directed = false, bool loopy = false);

  Index size() const noexcept { return weights_.rows(); }
  bool directed() const noexcept { return directed_; }
  bool loopy() const noexcept { return loopy_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  double weight(Index i, Index j) const { return weights_(i, j); }
  bool has_edge(Index i, Index j) const { return weights_(i, j) != 0.0; }

  /// True when every weight is 0 or 1.
  bool unweighted() const;
  /// Number of edges: unordered pairs (plus loops) when undirected, ordered
  /// pairs when directed.
  Index edge_count() const;

  /// 0/1 adjacency of the same shape.
  Graph binarized() const;
  /// Undirected graph with w(i,j) = max(w(i,j), w(j,i)).
  Graph symmetrized() const;
  /// Subgraph induced by `vertices`, relabeled 0..k-1 in the given order.
  Graph induced(const std::vector<Index>& vertices) const;
  /// Vertex v of this graph becomes vertex new_label[v] of the result.
  Graph relabeled(const std::vector<Index>& new_label) const;

  bool operator==(const Graph&) const = default;

private:
  Eigen::MatrixXd weights_;
  bool directed_ = false;
  bool loopy_ = false;
};

/// Weakly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Index>> connected_components(const Graph& g);

/// Sorted vertex set of a connected subgraph with `size` vertices: a
/// randomized breadth-first growth from a random vertex of a component large
/// enough to hold it. Throws Error when every component is smaller.
std::vector<Index> sample_connected_vertices(const Graph& g, Index size, Rng& rng);

// Edge-list text format: one "u v [w]" line per edge, 1-based ids, weight
// defaults to 1. Blank lines and lines starting with '#' are ignored except
// for an optional "# vertices N" header that fixes the vertex count (so that
// trailing isolated vertices survive a round trip). Undirected inputs list
// each edge once; listing both orientations is a duplicate.
Graph read_edge_list(std::istream& in, bool directed, bool loopy);
Graph load_edge_list(const std::filesystem::path& path, bool directed,
                     bool loopy);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

struct BitFlipParams {
  Index n = 100;
  double p = 0.5;
  double rho = 0.0;
  std::uint64_t rng_seed = 0;
};

struct CloneParams {
  double clone_success_prob = 0.2;
  int max_clones = 10;
  std::uint64_t rng_seed = 0;
};

/// Simple undirected G(n, p).
Graph sample_er(Index n, double p, Rng& rng);
Graph sample_er(Index n, double p, std::uint64_t rng_seed);

/// Flips every unordered pair's edge indicator independently with
/// probability rho. Requires a simple undirected 0/1 graph and rho in
/// [0, 0.5].
Graph bit_flip(const Graph& g, double rho, Rng& rng);
Graph bit_flip(const Graph& g, double rho, std::uint64_t rng_seed);

/// Correlated pair (G1 ~ ER(n,p), G2 = bit_flip(G1, rho)) on the same labels.
std::pair<Graph, Graph> sample_bit_flip_pair(const BitFlipParams& params);

struct CloneResult {
  Graph graph;
  /// (i, copy) for every original i and each of its copies, i included.
  Matching truth;
  /// origin[v] = original vertex of output vertex v.
  std::vector<Index> origin;
};

/// Replicates vertex i k_i = min(1 + Geometric failures, max_clones) times.
/// Originals keep their labels; copies are appended in order of i. Copies
/// inherit i's adjacency row; copies of the same vertex are adjacent to each
/// other only if i carries a self-loop.
CloneResult clone_vertices(const Graph& g, const CloneParams& params, Rng& rng);
CloneResult clone_vertices(const Graph& g, const CloneParams& params);

} // namespace jofc
