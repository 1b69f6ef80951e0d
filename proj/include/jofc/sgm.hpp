#pragma once

#include "jofc/graph.hpp"
#include "jofc/matching.hpp"
#include "jofc/seeding.hpp"

#include <vector>

namespace jofc {

struct SgmOptions {
  int max_iters = 50;
  /// Stop once the exact line-search step falls to this size or below.
  double step_tol = 1e-8;
};

struct SgmResult {
  /// Bijection between the unseeded vertices, original labels.
  Matching matching;
  /// Final doubly stochastic iterate P' over (unseeded1 x unseeded2).
  Eigen::MatrixXd relaxed;
  /// Relaxed objective at the start and after every iteration.
  std::vector<double> objective;
  /// Largest |row or column sum - 1| over all iterates.
  double max_marginal_error = 0.0;
  int iterations = 0;
};

/// Relaxed seeded matching objective
///   q(P) = |A|_F^2 + |B|_F^2 - 2 <A, P B P^T>,   P = I_s (+) P',
/// which equals |A - P B P^T|_F^2 whenever P' is a permutation. `a` and `b`
/// are ordered so that the s seeds lead and correspond index by index.
double sgm_objective(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& p_unseeded);

/// Frank-Wolfe over I_s (+) D(n-s) starting from the barycenter, followed by
/// a final LAP projection onto the permutations. Requires equal vertex
/// counts and a one-to-one seeding.
SgmResult sgm(const Graph& g1, const Graph& g2, const Seeding& s, const SgmOptions& opts = {});

} // namespace jofc
