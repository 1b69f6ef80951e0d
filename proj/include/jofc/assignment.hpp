#pragma once

#include "jofc/graph.hpp"
#include "jofc/matching.hpp"
#include "jofc/seeding.hpp"
#include "jofc/types.hpp"

#include <limits>
#include <vector>

namespace jofc {

/// Costs between unseeded vertices: rows are graph-1 vertices, columns
/// graph-2 vertices. Entries must be finite and nonnegative.
using CostMatrix = Eigen::MatrixXd;

/// Minimum-cost perfect assignment on a square matrix of arbitrary finite
/// reals (shortest augmenting paths with dual potentials, O(n^3)). Returns
/// the column assigned to each row. Among equal-cost candidates the lowest
/// column index is explored first, so results are deterministic.
template <typename Derived>
std::vector<Index> solve_lap(const Eigen::MatrixBase<Derived>& cost)
{
  using Scalar = typename Derived::Scalar;
  const Index n = cost.rows();
  if (cost.cols() != n) throw Error("solve_lap: cost matrix must be square");
  const Scalar inf = std::numeric_limits<Scalar>::infinity();

  // 1-based arrays; index 0 is the virtual source row/column.
  std::vector<Scalar> row_pot(static_cast<std::size_t>(n + 1), Scalar(0));
  std::vector<Scalar> col_pot(static_cast<std::size_t>(n + 1), Scalar(0));
  std::vector<Index> col_owner(static_cast<std::size_t>(n + 1), 0);
  std::vector<Index> way(static_cast<std::size_t>(n + 1), 0);
  for (Index row = 1; row <= n; ++row) {
    col_owner[0] = row;
    Index col0 = 0;
    std::vector<Scalar> min_slack(static_cast<std::size_t>(n + 1), inf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(col0)] = 1;
      const Index i0 = col_owner[static_cast<std::size_t>(col0)];
      Scalar delta = inf;
      Index col1 = 0;
      for (Index j = 1; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) continue;
        const Scalar reduced = cost(i0 - 1, j - 1) - row_pot[static_cast<std::size_t>(i0)] - col_pot[uj];
        if (reduced < min_slack[uj]) {
          min_slack[uj] = reduced;
          way[uj] = col0;
        }
        if (min_slack[uj] < delta) {
          delta = min_slack[uj];
          col1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) {
          row_pot[static_cast<std::size_t>(col_owner[uj])] += delta;
          col_pot[uj] -= delta;
        } else {
          min_slack[uj] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[static_cast<std::size_t>(col0)] != 0);
    do {
      const Index col1 = way[static_cast<std::size_t>(col0)];
      col_owner[static_cast<std::size_t>(col0)] = col_owner[static_cast<std::size_t>(col1)];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<Index> assignment(static_cast<std::size_t>(n), -1);
  for (Index j = 1; j <= n; ++j)
    assignment[static_cast<std::size_t>(col_owner[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return assignment;
}

/// Sum of the costs of the pairs of `m`.
double matching_cost(const CostMatrix& cost, const Matching& m);

/// Minimum-cost bijection. Rectangular inputs are padded to square with
/// 10 x the largest entry; rows or columns assigned to padding are left
/// unmatched.
Matching hungarian(const CostMatrix& cost);

/// Exact minimum-cost edge cover of the complete bipartite graph: every row
/// and every column in at least one pair.
Matching min_cost_edge_cover(const CostMatrix& cost);

struct GapOptions {
  enum class Attach {
    /// Every column left over after the bijective step joins its nearest row.
    all,
    /// A leftover column joins its nearest row only when strictly cheaper
    /// than that row's current mean matched cost; the rest stay unmatched.
    below_mean,
  };
  Attach attach = Attach::all;
};

/// Many-to-one matching with every row covered: a rectangular LAP first
/// (rows without a real partner then take their nearest column), after which
/// the leftover columns are attached to their nearest rows.
Matching gap_match(const CostMatrix& cost, const GapOptions& opts = {});

struct MatchEvaluation {
  Index correct1 = 0;  ///< i in U1 with est(i) == truth(i) as sets
  Index correct2 = 0;  ///< j in U2 with est(j) == truth(j) as sets
  Index u1 = 0, u2 = 0;
  bool bijective = false;
  /// R_m = correct1 / u1 when the truth is a bijection U1 <-> U2, otherwise
  /// (correct1 + correct2) / (u1 + u2).
  double ratio = 0.0;
  double ratio1 = 0.0; ///< correct1 / u1
  double ratio2 = 0.0; ///< correct2 / u2
};

/// Compares an estimated matching to the truth on the unseeded vertices.
/// Pairs touching seeds are ignored.
MatchEvaluation evaluate_match(const Matching& est, const Matching& truth, const Seeding& s);

/// Ordered pairs (i,j) in V x V whose edge status disagrees under phi:
/// [i~j in g1] != [phi(i)~phi(j) in g2]. Edge status is weight != 0.
Index edge_disagreement(const Graph& g1, const Graph& g2, const Matching& phi);

} // namespace jofc
