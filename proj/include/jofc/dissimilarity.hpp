#pragma once

#include "jofc/graph.hpp"
#include "jofc/types.hpp"

#include <filesystem>
#include <iosfwd>

namespace jofc {

/// Symmetric, zero-diagonal, finite, nonnegative matrix of pairwise vertex
/// dissimilarities.
class DissimilarityMatrix {
public:
  DissimilarityMatrix() = default;
  /// Throws Error if the invariants do not hold.
  explicit DissimilarityMatrix(Eigen::MatrixXd values);

  Index size() const noexcept { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

private:
  Eigen::MatrixXd values_;
};

/// All-pairs shortest path lengths with edge length 1/weight (1 on 0/1
/// graphs). Directed graphs are symmetrized by max(w(i,j), w(j,i)) first.
/// Throws Error naming the components if the graph is disconnected.
DissimilarityMatrix shortest_path_dissimilarity(const Graph& g);

/// 1 - 2 s(i,j) / (s(i,i) + s(j,j)) with s the weighted overlap of closed
/// neighborhoods:
///   s(i,j) = sum_k min(W~(i,k), W~(j,k)) + sum_k min(W~(k,i), W~(k,j))
/// where W~ is the adjacency with each diagonal entry raised to the vertex's
/// largest incident weight. For undirected graphs the two sums coincide and
/// only one is taken. Throws Error on isolated vertices.
DissimilarityMatrix weighted_dice_dissimilarity(const Graph& g);

/// Divides by the largest entry; throws Error on an all-zero matrix.
DissimilarityMatrix normalize(const DissimilarityMatrix& d);

/// Dense CSV: a first line holding n, then n rows of n comma-separated values.
void write_dissimilarity_csv(const DissimilarityMatrix& d, std::ostream& out);
DissimilarityMatrix read_dissimilarity_csv(std::istream& in);

} // namespace jofc
