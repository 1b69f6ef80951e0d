#include "jofc/sgm.hpp"

#include "jofc/assignment.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <limits>

using namespace jofc;
using namespace jofc::test;

namespace {

/// g1 with its unseeded vertices (labels >= seeds) shuffled; truth maps v of
/// g1 to truth[v] of the returned graph.
Graph shuffled_copy(const Graph& g1, Index seeds, Rng& rng, std::vector<Index>& truth)
{
  truth = identity(g1.size());
  std::shuffle(truth.begin() + seeds, truth.end(), rng);
  return g1.relabeled(truth);
}

Seeding leading_seeds(Index n, Index seeds)
{
  std::vector<VertexPair> pairs;
  for (Index i = 0; i < seeds; ++i) pairs.emplace_back(i, i);
  return Seeding(n, n, Matching(pairs));
}

Matching full_bijection(const Seeding& s, const Matching& unseeded)
{
  std::vector<VertexPair> pairs = s.pairs().pairs();
  pairs.insert(pairs.end(), unseeded.pairs().begin(), unseeded.pairs().end());
  return Matching(pairs);
}

/// Smallest edge disagreement over all bijections fixing the leading seeds.
Index brute_force_gmp(const Graph& g1, const Graph& g2, Index seeds)
{
  std::vector<Index> phi = identity(g1.size());
  Index best = std::numeric_limits<Index>::max();
  do {
    std::vector<VertexPair> pairs;
    for (std::size_t i = 0; i < phi.size(); ++i) pairs.emplace_back(static_cast<Index>(i), phi[i]);
    best = std::min(best, edge_disagreement(g1, g2, Matching(pairs)));
  } while (std::next_permutation(phi.begin() + seeds, phi.end()));
  return best;
}

} // namespace

TEST_CASE("sgm recovers an isomorphic copy")
{
  Rng rng(41);
  for (Index seeds : {0, 3, 10}) {
    const Index n = 30;
    const Graph g1 = sample_er(n, 0.5, rng);
    std::vector<Index> truth;
    const Graph g2 = shuffled_copy(g1, seeds, rng, truth);
    const Seeding s = leading_seeds(n, seeds);
    const SgmResult r = sgm(g1, g2, s);
    CHECK(edge_disagreement(g1, g2, full_bijection(s, r.matching)) == 0);
  }
}

TEST_CASE("sgm against exhaustive search on six vertices")
{
  Rng rng(42);
  const Index n = 6, seeds = 2;
  const int instances = 100;
  int optimal = 0;
  for (int trial = 0; trial < instances; ++trial) {
    const Graph g1 = sample_er(n, 0.5, rng);
    std::vector<Index> truth;
    const Graph g2 = shuffled_copy(g1, seeds, rng, truth);
    const Seeding s = leading_seeds(n, seeds);
    const Index found = edge_disagreement(g1, g2, full_bijection(s, sgm(g1, g2, s).matching));
    const Index best = brute_force_gmp(g1, g2, seeds);
    CHECK(found >= best);
    if (found == best) ++optimal;
  }
  CHECK(optimal >= 80);
}

TEST_CASE("Frank-Wolfe iterates")
{
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 25, seeds = 5;
    const Graph g1 = sample_er(n, 0.4, rng);
    const Graph g2 = bit_flip(g1, 0.2, rng);
    const Seeding s = leading_seeds(n, seeds);
    const SgmResult r = sgm(g1, g2, s);

    CHECK(r.max_marginal_error <= 1e-9);
    CHECK(r.relaxed.minCoeff() >= 0.0);
    CHECK(r.relaxed.maxCoeff() <= 1.0 + 1e-12);
    for (std::size_t t = 1; t < r.objective.size(); ++t)
      CHECK(r.objective[t] <= r.objective[t - 1] * (1.0 + 1e-12) + 1e-12);

    CHECK(r.matching.size() == static_cast<std::size_t>(n - seeds));
    for (auto [i, j] : r.matching.pairs()) {
      CHECK_FALSE(s.is_seed1(i));
      CHECK_FALSE(s.is_seed2(j));
    }
  }
}

TEST_CASE("relaxed objective equals the Frobenius distance on permutations")
{
  Rng rng(44);
  const Index n = 8, seeds = 3, u = n - seeds;
  const Eigen::MatrixXd a = sample_er(n, 0.5, rng).weights();
  const Eigen::MatrixXd b = sample_er(n, 0.5, rng).weights();
  std::vector<Index> perm = identity(u);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  p.bottomRightCorner(u, u).setZero();
  for (Index r = 0; r < u; ++r) p(seeds + r, seeds + perm[static_cast<std::size_t>(r)]) = 1.0;
  const double direct = (a - p * b * p.transpose()).squaredNorm();
  CHECK(sgm_objective(a, b, p.bottomRightCorner(u, u)) == doctest::Approx(direct));
}

TEST_CASE("sgm preconditions")
{
  const Graph g = path_graph(4);
  CHECK_THROWS_AS(sgm(g, path_graph(5), leading_seeds(4, 1)), Error);
  CHECK_THROWS_AS(sgm(g, g, Seeding(4, 4, Matching({{0, 0}, {0, 1}}))), Error);
  const SgmResult all = sgm(g, g, leading_seeds(4, 4));
  CHECK(all.matching.empty());
}
