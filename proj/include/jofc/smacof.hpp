#pragma once

#include "jofc/random.hpp"
#include "jofc/stress.hpp"
#include "jofc/types.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace jofc {

struct SmacofOptions {
  /// Fidelity weight of the JOFC weight scheme; unused by plain smacof.
  double w = 0.8;
  int max_iters = 500;
  double rel_stress_tol = 1e-6;
  /// One classical-scaling start plus n_restarts - 1 Gaussian starts.
  int n_restarts = 4;
  std::uint64_t rng_seed = 0;
};

template <typename Scalar>
struct SmacofRun {
  Matrix<Scalar> points;
  Scalar stress = Scalar(0);
  int iterations = 0;
  bool converged = false;
  /// Stress of the start followed by the stress after every iteration.
  std::vector<Scalar> history;
};

template <typename Scalar>
struct SmacofResult : SmacofRun<Scalar> {
  int best_restart = 0;
  std::vector<Scalar> restart_stress;
};

/// Called after every iterate (iteration 0 is the start).
template <typename Scalar>
using SmacofObserver =
    std::function<void(int restart, int iteration, const Matrix<Scalar>& points, Scalar stress)>;

/// Weighted raw-stress minimization by iterative majorization. Holds the
/// dissimilarities, weights and the Moore-Penrose inverse of the weight
/// Laplacian, which every Guttman transform reuses.
template <typename Scalar>
class StressMajorizer {
public:
  template <typename DerivedD, typename DerivedW>
  StressMajorizer(const Eigen::MatrixBase<DerivedD>& dissimilarities,
                  const Eigen::MatrixBase<DerivedW>& weights)
      : dissimilarities_(dissimilarities.template cast<Scalar>()),
        weights_(weights.template cast<Scalar>())
  {
    validate();
    const Index n = size();
    const Matrix<Scalar> centering = Matrix<Scalar>::Constant(n, n, Scalar(1) / Scalar(n));
    const Matrix<Scalar> shifted = weight_laplacian(weights_) + centering;
    laplacian_pinv_ = shifted.llt().solve(Matrix<Scalar>::Identity(n, n)) - centering;
    exact_fit_ = Scalar(1e-24) * (weights_.array() * dissimilarities_.array().square()).sum() / Scalar(2);
  }

  Index size() const noexcept { return dissimilarities_.rows(); }
  const Matrix<Scalar>& dissimilarities() const noexcept { return dissimilarities_; }
  const Matrix<Scalar>& weights() const noexcept { return weights_; }
  const Matrix<Scalar>& laplacian_pinv() const noexcept { return laplacian_pinv_; }

  Scalar stress(const Matrix<Scalar>& points) const
  {
    return raw_stress(dissimilarities_, weights_, points);
  }

  Matrix<Scalar> gradient(const Matrix<Scalar>& points) const
  {
    return stress_gradient(dissimilarities_, weights_, points);
  }

  /// X+ = V^+ B(X) X; never increases the stress.
  Matrix<Scalar> guttman(const Matrix<Scalar>& points) const
  {
    return laplacian_pinv_ * (guttman_b(dissimilarities_, weights_, points) * points);
  }

  SmacofRun<Scalar> run(Matrix<Scalar> start, const SmacofOptions& opts,
                        const SmacofObserver<Scalar>& observer = {}, int restart = 0) const
  {
    SmacofRun<Scalar> out;
    out.points = std::move(start);
    out.stress = stress(out.points);
    out.history.push_back(out.stress);
    if (observer) observer(restart, 0, out.points, out.stress);
    if (out.stress <= exact_fit_) {
      out.converged = true;
      return out;
    }
    for (int it = 1; it <= opts.max_iters; ++it) {
      Matrix<Scalar> next = guttman(out.points);
      const Scalar next_stress = stress(next);
      const Scalar previous = out.stress;
      out.points = std::move(next);
      out.stress = next_stress;
      out.iterations = it;
      out.history.push_back(next_stress);
      if (observer) observer(restart, it, out.points, next_stress);
      if (next_stress <= exact_fit_ || previous - next_stress <= Scalar(opts.rel_stress_tol) * previous) {
        out.converged = true;
        break;
      }
    }
    return out;
  }

private:
  void validate() const
  {
    const Index n = dissimilarities_.rows();
    if (dissimilarities_.cols() != n || weights_.rows() != n || weights_.cols() != n)
      throw Error("smacof: dissimilarity and weight matrices must be square and equal-sized");
    if (!dissimilarities_.allFinite() || !weights_.allFinite() || (weights_.array() < Scalar(0)).any())
      throw Error("smacof: weights must be finite and nonnegative, dissimilarities finite");
    if (weights_ != weights_.transpose()) throw Error("smacof: weight matrix must be symmetric");

    // Every point needs a weighted path to every other, or V is singular
    // beyond its constant null space.
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Index> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Index v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(v)] && v != queue[head] && weights_(queue[head], v) > Scalar(0)) {
          seen[static_cast<std::size_t>(v)] = 1;
          queue.push_back(v);
        }
    for (Index i = 0; i < n; ++i) {
      Scalar off = weights_.row(i).sum() - weights_(i, i);
      if (n > 1 && off <= Scalar(0))
        throw Error("smacof: degenerate weights, point " + std::to_string(i + 1) +
                    " has zero weight to every other point");
    }
    if (static_cast<Index>(queue.size()) != n)
      throw Error("smacof: degenerate weights, the weight graph is disconnected");
  }

  Matrix<Scalar> dissimilarities_;
  Matrix<Scalar> weights_;
  Matrix<Scalar> laplacian_pinv_;
  /// Stress at or below which the fit counts as exact: 1e-24 of sum_{i<j} W D^2.
  Scalar exact_fit_ = Scalar(0);
};

/// Root-mean-square of the weighted dissimilarities, used to scale random
/// starts.
template <typename Scalar>
Scalar dissimilarity_scale(const Matrix<Scalar>& dissimilarities, const Matrix<Scalar>& weights)
{
  const Scalar total_weight = weights.sum();
  if (total_weight <= Scalar(0)) return Scalar(1);
  const Scalar ms = (weights.array() * dissimilarities.array().square()).sum() / total_weight;
  return ms > Scalar(0) ? std::sqrt(ms) : Scalar(1);
}

/// Best of opts.n_restarts majorization runs in `dim` dimensions: the first
/// starts from classical scaling, the rest from Gaussian configurations drawn
/// from streams keyed by (opts.rng_seed, restart).
template <typename DerivedD, typename DerivedW>
SmacofResult<typename DerivedD::Scalar> smacof(const Eigen::MatrixBase<DerivedD>& dissimilarities,
                                               const Eigen::MatrixBase<DerivedW>& weights, Index dim,
                                               const SmacofOptions& opts,
                                               const SmacofObserver<typename DerivedD::Scalar>& observer = {})
{
  using Scalar = typename DerivedD::Scalar;
  if (dim < 1) throw Error("smacof: dimension must be >= 1");
  if (opts.n_restarts < 1) throw Error("smacof: n_restarts must be >= 1");
  const StressMajorizer<Scalar> majorizer(dissimilarities, weights);
  const Index n = majorizer.size();

  SmacofResult<Scalar> best;
  if (n <= 1) {
    best.points = Matrix<Scalar>::Zero(n, dim);
    best.converged = true;
    best.history = {Scalar(0)};
    best.restart_stress = {Scalar(0)};
    return best;
  }

  const Scalar spread = dissimilarity_scale(majorizer.dissimilarities(), majorizer.weights()) /
                        std::sqrt(Scalar(2 * dim));
  bool have_best = false;
  for (int restart = 0; restart < opts.n_restarts; ++restart) {
    Rng rng = make_stream(opts.rng_seed, restart);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix<Scalar> start;
    if (restart == 0) {
      start = classical_scaling(majorizer.dissimilarities(), dim);
      // An all-coincident start is a fixed point of the Guttman transform.
      if (pairwise_distances(start).maxCoeff() <= Scalar(0))
        start = Matrix<Scalar>::NullaryExpr(n, dim, [&] { return Scalar(gauss(rng)) * spread * Scalar(1e-3); });
    } else {
      start = Matrix<Scalar>::NullaryExpr(n, dim, [&] { return Scalar(gauss(rng)) * spread; });
    }
    SmacofRun<Scalar> run = majorizer.run(std::move(start), opts, observer, restart);
    best.restart_stress.push_back(run.stress);
    if (!have_best || run.stress < best.stress) {
      static_cast<SmacofRun<Scalar>&>(best) = std::move(run);
      best.best_restart = restart;
      have_best = true;
    }
  }
  return best;
}

} // namespace jofc
