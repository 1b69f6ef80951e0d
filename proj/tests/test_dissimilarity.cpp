#include "jofc/dissimilarity.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <limits>
#include <sstream>

using namespace jofc;
using namespace jofc::test;

namespace {

Eigen::MatrixXd floyd_warshall(const Graph& g)
{
  const Index n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, inf);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double w = std::max(g.weight(i, j), g.weight(j, i));
      if (i != j && w > 0.0) d(i, j) = 1.0 / w;
    }
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

/// Scalar evaluation of the closed-neighbourhood weighted Dice formula.
double dice_by_formula(const Graph& g, Index i, Index j)
{
  const Index n = g.size();
  auto closed = [&](Index a, Index b) {
    if (a != b) return g.weight(a, b);
    double top = 0.0;
    for (Index k = 0; k < n; ++k) top = std::max({top, g.weight(a, k), g.weight(k, a)});
    return top;
  };
  auto overlap = [&](Index a, Index b) {
    double s = 0.0;
    for (Index k = 0; k < n; ++k) s += std::min(closed(a, k), closed(b, k));
    if (g.directed())
      for (Index k = 0; k < n; ++k) s += std::min(closed(k, a), closed(k, b));
    return s;
  };
  return 1.0 - 2.0 * overlap(i, j) / (overlap(i, i) + overlap(j, j));
}

Graph connected_er(Index n, double p, Rng& rng)
{
  for (;;) {
    Graph g = sample_er(n, p, rng);
    if (connected_components(g).size() == 1) return g;
  }
}

Graph random_weighted(Index n, bool directed, Rng& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = directed ? 0 : i + 1; j < n; ++j)
        if (i != j && u(rng) < 0.5) {
          w(i, j) = 0.5 + 4.0 * u(rng);
          if (!directed) w(j, i) = w(i, j);
        }
    Graph g(w, directed);
    if (connected_components(g).size() == 1) return g;
  }
}

} // namespace

TEST_CASE("shortest path: hand cases")
{
  const auto d = shortest_path_dissimilarity(path_graph(3));
  CHECK(d(0, 2) == 2.0);
  CHECK(d(0, 1) == 1.0);
  CHECK(d(1, 2) == 1.0);

  Eigen::MatrixXd k4 = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
  const auto dk = shortest_path_dissimilarity(Graph(k4));
  CHECK(dk.values() == k4);
}

TEST_CASE("shortest path equals Floyd-Warshall on random graphs")
{
  Rng rng = make_stream(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = connected_er(20, 0.4, rng);
    CHECK((shortest_path_dissimilarity(g).values() - floyd_warshall(g)).cwiseAbs().maxCoeff() == 0.0);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_weighted(12, trial % 2 == 0, rng);
    CHECK((shortest_path_dissimilarity(g).values() - floyd_warshall(g)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("shortest path: triangle inequality, symmetry, zero diagonal")
{
  Rng rng = make_stream(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_weighted(15, trial % 2 == 1, rng);
    const auto d = shortest_path_dissimilarity(g).values();
    CHECK(d == d.transpose());
    CHECK(d.diagonal().isZero(0.0));
    for (Index k = 0; k < 15; ++k)
      for (Index i = 0; i < 15; ++i)
        for (Index j = 0; j < 15; ++j) CHECK(d(i, j) <= d(i, k) + d(k, j) + 1e-12);
  }
}

TEST_CASE("shortest path: a disconnected graph names its components")
{
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1.0;
  w(2, 3) = w(3, 2) = 1.0;
  CHECK_THROWS_WITH_AS(shortest_path_dissimilarity(Graph(w)), doctest::Contains("{3, 4}"), Error);
}

TEST_CASE("weighted dice: identical closed neighbourhoods and disjoint ones")
{
  Eigen::MatrixXd k3 = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  CHECK(weighted_dice_dissimilarity(Graph(k3)).values().isZero(0.0));

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1.0;
  w(2, 3) = w(3, 2) = 1.0;
  const auto d = weighted_dice_dissimilarity(Graph(w));
  CHECK(d(0, 2) == 1.0);
  CHECK(d(1, 3) == 1.0);
  CHECK(d(0, 1) == 0.0);
}

TEST_CASE("weighted dice: five-vertex weighted graph against the formula")
{
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(5, 5);
  auto edge = [&](Index i, Index j, double x) { w(i, j) = w(j, i) = x; };
  edge(0, 1, 2.0);
  edge(0, 2, 1.0);
  edge(1, 2, 3.0);
  edge(2, 3, 0.5);
  edge(3, 4, 4.0);
  edge(1, 4, 1.5);
  const Graph g(w);
  const auto d = weighted_dice_dissimilarity(g);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) CHECK(d(i, j) == doctest::Approx(dice_by_formula(g, i, j)).epsilon(1e-14));
  // Closed rows 0: [2, 2, 1, 0, 0] and 3: [0, 0, 0.5, 4, 4] overlap in 0.5;
  // s(0,0) = 5 and s(3,3) = 8.5.
  CHECK(d(0, 3) == doctest::Approx(1.0 - 1.0 / 13.5));
}

TEST_CASE("weighted dice: directed graphs and random properties")
{
  Rng rng = make_stream(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_weighted(8, trial % 2 == 0, rng);
    const auto d = weighted_dice_dissimilarity(g);
    CHECK(d.values() == d.values().transpose());
    CHECK(d.values().diagonal().isZero(0.0));
    CHECK(d.values().minCoeff() >= 0.0);
    CHECK(d.values().maxCoeff() <= 1.0);
    for (Index i = 0; i < 8; ++i)
      for (Index j = 0; j < 8; ++j) CHECK(d(i, j) == doctest::Approx(dice_by_formula(g, i, j)).epsilon(1e-12));
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1.0;
  CHECK_THROWS_AS(weighted_dice_dissimilarity(Graph(w)), Error);
}

TEST_CASE("normalize")
{
  Eigen::MatrixXd m(3, 3);
  m << 0, 4, 2, 4, 0, 1, 2, 1, 0;
  const auto n = normalize(DissimilarityMatrix(m));
  CHECK(n.values() == m / 4.0);
  CHECK(normalize(n).values() == n.values());
  CHECK(n(0, 0) == 0.0);
  CHECK_THROWS_AS(normalize(DissimilarityMatrix(Eigen::MatrixXd::Zero(3, 3))), Error);

  const auto sp = shortest_path_dissimilarity(path_graph(4));
  CHECK(sp.values().maxCoeff() == 3.0);
  CHECK(normalize(sp).values().maxCoeff() == 1.0);
}

TEST_CASE("dissimilarity matrix invariants and CSV round trip")
{
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(DissimilarityMatrix{bad}, Error);
  CHECK_THROWS_AS(DissimilarityMatrix(Eigen::MatrixXd::Identity(2, 2)), Error);

  Rng rng = make_stream(24);
  const DissimilarityMatrix d(random_dissimilarities(6, rng));
  std::stringstream buf;
  write_dissimilarity_csv(d, buf);
  CHECK(read_dissimilarity_csv(buf).values() == d.values());
}
