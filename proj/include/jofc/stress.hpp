#pragma once

#include "jofc/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace jofc {

/// Euclidean distances between the rows of `points`.
template <typename Derived>
Matrix<typename Derived::Scalar> pairwise_distances(const Eigen::MatrixBase<Derived>& points)
{
  using Scalar = typename Derived::Scalar;
  const Index n = points.rows();
  Matrix<Scalar> dist = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i)
      dist(i, j) = dist(j, i) = (points.row(i) - points.row(j)).norm();
  return dist;
}

/// Euclidean distances between rows of `a` (rows of the result) and rows of
/// `b` (columns).
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> cross_distances(const Eigen::MatrixBase<DerivedA>& a,
                                                  const Eigen::MatrixBase<DerivedB>& b)
{
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> dist(a.rows(), b.rows());
  for (Index j = 0; j < b.rows(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      dist(i, j) = (a.row(i) - b.row(j)).norm();
  return dist;
}

/// Weighted raw stress  sum_{i<j} W(i,j) (d_ij(X) - D(i,j))^2.
template <typename DerivedD, typename DerivedW, typename DerivedX>
typename DerivedX::Scalar raw_stress(const Eigen::MatrixBase<DerivedD>& dissimilarities,
                                     const Eigen::MatrixBase<DerivedW>& weights,
                                     const Eigen::MatrixBase<DerivedX>& points)
{
  using Scalar = typename DerivedX::Scalar;
  const Index n = points.rows();
  Scalar total(0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      const Scalar w = weights(i, j);
      if (w == Scalar(0)) continue;
      const Scalar r = (points.row(i) - points.row(j)).norm() - dissimilarities(i, j);
      total += w * r * r;
    }
  return total;
}

/// V = diag(W 1) - W, the Laplacian of the weight matrix (diagonal of W
/// ignored).
template <typename Derived>
Matrix<typename Derived::Scalar> weight_laplacian(const Eigen::MatrixBase<Derived>& weights)
{
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> v = -weights;
  v.diagonal().setZero();
  v.diagonal() = -v.rowwise().sum();
  return v;
}

/// B(X) of the Guttman transform: b_ij = -W_ij D_ij / d_ij(X) for d_ij > 0
/// (0 otherwise), b_ii = -sum_{j != i} b_ij.
template <typename DerivedD, typename DerivedW, typename DerivedX>
Matrix<typename DerivedX::Scalar> guttman_b(const Eigen::MatrixBase<DerivedD>& dissimilarities,
                                           const Eigen::MatrixBase<DerivedW>& weights,
                                           const Eigen::MatrixBase<DerivedX>& points)
{
  using Scalar = typename DerivedX::Scalar;
  const Index n = points.rows();
  Matrix<Scalar> b = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      const Scalar d = (points.row(i) - points.row(j)).norm();
      if (d > Scalar(0)) b(i, j) = b(j, i) = -weights(i, j) * dissimilarities(i, j) / d;
    }
  b.diagonal() = -b.rowwise().sum();
  return b;
}

/// Analytic gradient of raw_stress at configurations with distinct points:
/// 2 (V - B(X)) X.
template <typename DerivedD, typename DerivedW, typename DerivedX>
Matrix<typename DerivedX::Scalar> stress_gradient(const Eigen::MatrixBase<DerivedD>& dissimilarities,
                                                 const Eigen::MatrixBase<DerivedW>& weights,
                                                 const Eigen::MatrixBase<DerivedX>& points)
{
  using Scalar = typename DerivedX::Scalar;
  const Matrix<Scalar> w = weights.template cast<Scalar>();
  return Scalar(2) * (weight_laplacian(w) - guttman_b(dissimilarities, w, points)) * points;
}

/// Torgerson scaling: top-`dim` eigenpairs of -J (D o D) J / 2. Negative
/// eigenvalues are clamped to 0; missing dimensions are zero-filled.
template <typename Derived>
Matrix<typename Derived::Scalar> classical_scaling(const Eigen::MatrixBase<Derived>& dissimilarities,
                                                   Index dim)
{
  using Scalar = typename Derived::Scalar;
  const Index n = dissimilarities.rows();
  Matrix<Scalar> squared = dissimilarities.array().square().matrix();
  const Vector<Scalar> row_mean = squared.rowwise().mean();
  const Scalar grand_mean = row_mean.mean();
  Matrix<Scalar> gram = squared;
  gram.colwise() -= row_mean;
  gram.rowwise() -= row_mean.transpose();
  gram.array() += grand_mean;
  gram *= Scalar(-0.5);

  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(gram);
  Matrix<Scalar> points = Matrix<Scalar>::Zero(n, dim);
  for (Index k = 0; k < std::min(dim, n); ++k) {
    const Index src = n - 1 - k;
    const Scalar lambda = std::max(eig.eigenvalues()(src), Scalar(0));
    points.col(k) = eig.eigenvectors().col(src) * std::sqrt(lambda);
  }
  return points;
}

} // namespace jofc
