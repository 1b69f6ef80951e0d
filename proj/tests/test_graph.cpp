#include "jofc/graph.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace jofc;
using namespace jofc::test;

namespace {

Graph parse(const std::string& text, bool directed = false, bool loopy = false)
{
  std::istringstream in(text);
  return read_edge_list(in, directed, loopy);
}

} // namespace

TEST_CASE("edge list: single edge")
{
  const Graph g = parse("1 2 1\n");
  CHECK(g.size() == 2);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 0) == 1.0);
  CHECK(parse("1 2\n").weight(0, 1) == 1.0);
}

TEST_CASE("edge list: contract violations")
{
  CHECK_THROWS_WITH_AS(parse("1 2 3\n2 1 4\n"), doctest::Contains("duplicate"), Error);
  CHECK_THROWS_WITH_AS(parse("1 1 1\n"), doctest::Contains("self-loop"), Error);
  CHECK_THROWS_AS(parse("1 2 -1\n"), Error);
  CHECK_THROWS_AS(parse("1 x\n"), Error);
  CHECK_THROWS_AS(parse("0 2\n"), Error);
  CHECK_NOTHROW(parse("1 1 2\n", false, true));
  CHECK_NOTHROW(parse("1 2 3\n2 1 4\n", true));
}

TEST_CASE("edge list: comments, blank lines, directed input")
{
  const Graph g = parse("# a comment\n\n1 3 2.5\n3 2\n", true);
  CHECK(g.size() == 3);
  CHECK(g.directed());
  CHECK(g.weight(0, 2) == 2.5);
  CHECK(g.weight(2, 0) == 0.0);
  CHECK(g.weight(2, 1) == 1.0);
}

TEST_CASE("edge list round trip is the identity")
{
  Rng rng = make_stream(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const bool directed = trial % 2 == 1;
    const bool loopy = trial % 3 == 0;
    const Index n = 1 + trial % 9;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = directed ? 0 : i; j < n; ++j) {
        if (i == j && !loopy) continue;
        if (u(rng) < 0.4) {
          w(i, j) = u(rng) * 7.0 / 3.0;
          if (!directed) w(j, i) = w(i, j);
        }
      }
    const Graph g(w, directed, loopy);
    std::stringstream buf;
    write_edge_list(g, buf);
    CHECK(read_edge_list(buf, directed, loopy) == g);
  }
}

TEST_CASE("graph invariants are enforced")
{
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(Graph{asym}, Error);
  CHECK_NOTHROW(Graph(asym, true));
  CHECK_THROWS_AS(Graph(Eigen::MatrixXd::Identity(2, 2)), Error);
  CHECK_NOTHROW(Graph(Eigen::MatrixXd::Identity(2, 2), false, true));
  CHECK_THROWS_AS(Graph(-Eigen::MatrixXd::Ones(2, 2) + Eigen::MatrixXd::Identity(2, 2)), Error);
}

TEST_CASE("sample_er: simple, deterministic, binomial edge count")
{
  const Graph a = sample_er(30, 0.3, 5), b = sample_er(30, 0.3, 5);
  CHECK(a == b);
  CHECK(a.unweighted());
  CHECK(a.weights().diagonal().isZero());
  CHECK(a.weights() == a.weights().transpose());
  CHECK_THROWS_AS(sample_er(5, 0.0, 1), Error);
  CHECK_THROWS_AS(sample_er(5, 1.0, 1), Error);

  const int samples = 100;
  const double pairs = 300.0 * 299.0 / 2.0;
  double total = 0.0;
  Rng rng = make_stream(12);
  for (int k = 0; k < samples; ++k) total += static_cast<double>(sample_er(300, 0.5, rng).edge_count());
  const double sd_of_mean = std::sqrt(pairs * 0.25 / samples);
  CHECK(std::abs(total / samples - 22425.0) < 3.0 * sd_of_mean);
}

TEST_CASE("sample_er: p near one keeps nearly every edge")
{
  Rng rng = make_stream(13);
  int present = 0;
  for (int k = 0; k < 1000; ++k) present += sample_er(2, 0.999, rng).has_edge(0, 1);
  CHECK(present >= 996);
}

TEST_CASE("bit_flip: rho = 0 is the identity, rho outside [0, 0.5] is rejected")
{
  const Graph g = sample_er(25, 0.4, 3);
  CHECK(bit_flip(g, 0.0, 9) == g);
  CHECK_THROWS_AS(bit_flip(g, 0.6, 9), Error);
  CHECK_THROWS_AS(bit_flip(g, -0.1, 9), Error);
  Eigen::MatrixXd weighted = g.weights();
  weighted(0, 1) = weighted(1, 0) = 2.0;
  CHECK_THROWS_AS(bit_flip(Graph(weighted), 0.1, 9), Error);
}

TEST_CASE("bit_flip: a single edge survives with probability 1 - rho")
{
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
  w(0, 1) = w(1, 0) = 1.0;
  const Graph g(w);
  Rng rng = make_stream(14);
  const int samples = 10000;
  int kept = 0;
  for (int k = 0; k < samples; ++k) kept += bit_flip(g, 0.3, rng).has_edge(0, 1);
  const double se = std::sqrt(0.7 * 0.3 / samples);
  CHECK(std::abs(kept / double(samples) - 0.7) < 3.0 * se);
}

TEST_CASE("bit_flip: rho = 0.5 makes input and output indicators uncorrelated")
{
  Rng rng = make_stream(15);
  const int samples = 1000;
  std::vector<double> x, y;
  for (int k = 0; k < samples; ++k) {
    const Graph g = sample_er(2, 0.5, rng);
    x.push_back(g.has_edge(0, 1));
    y.push_back(bit_flip(g, 0.5, rng).has_edge(0, 1));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / samples;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / samples;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int k = 0; k < samples; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  const double corr = sxy / std::sqrt(sxx * syy);
  CHECK(std::abs(corr) < 3.0 / std::sqrt(double(samples)));
}

TEST_CASE("bit_flip: every pair flips with probability rho")
{
  Rng rng = make_stream(16);
  const double rho = 0.2;
  double kept = 0, edges = 0, created = 0, non_edges = 0;
  for (int k = 0; k < 20; ++k) {
    const Graph g = sample_er(60, 0.5, rng);
    const Graph h = bit_flip(g, rho, rng);
    for (Index j = 0; j < 60; ++j)
      for (Index i = 0; i < j; ++i) {
        if (g.has_edge(i, j)) {
          ++edges;
          kept += h.has_edge(i, j);
        } else {
          ++non_edges;
          created += h.has_edge(i, j);
        }
      }
  }
  CHECK(std::abs(kept / edges - (1 - rho)) < 3.0 * std::sqrt(rho * (1 - rho) / edges));
  CHECK(std::abs(created / non_edges - rho) < 3.0 * std::sqrt(rho * (1 - rho) / non_edges));
}

TEST_CASE("clone_vertices: max_clones = 1 returns the input and the identity")
{
  const Graph g = sample_er(12, 0.5, 4);
  const CloneResult r = clone_vertices(g, CloneParams{0.2, 1, 8});
  CHECK(r.graph == g);
  std::vector<VertexPair> id;
  for (Index i = 0; i < 12; ++i) id.emplace_back(i, i);
  CHECK(r.truth == Matching(id));
}

TEST_CASE("clone_vertices: path 1-2 with vertex 1 copied once")
{
  const Graph g = path_graph(2);
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    const CloneResult r = clone_vertices(g, CloneParams{0.2, 2, seed});
    if (r.origin != std::vector<Index>{0, 1, 0}) continue;
    found = true;
    CHECK(r.graph.size() == 3);
    CHECK(r.graph.has_edge(2, 1));
    CHECK(r.graph.has_edge(0, 1));
    CHECK_FALSE(r.graph.has_edge(0, 2));
    CHECK(r.truth == Matching({{0, 0}, {0, 2}, {1, 1}}));
  }
  CHECK(found);
}

TEST_CASE("clone_vertices: copies share the original's neighbourhood, counts are capped")
{
  Rng rng = make_stream(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = sample_er(15, 0.4, rng);
    const CloneParams params{0.3, 4, 0};
    const CloneResult r = clone_vertices(g, params, rng);
    const auto copies = r.truth.forward(15);
    for (Index i = 0; i < 15; ++i) {
      const auto& mine = copies[static_cast<std::size_t>(i)];
      CHECK(mine.size() >= 1);
      CHECK(static_cast<int>(mine.size()) <= params.max_clones);
      CHECK(mine.front() == i);
    }
    const Index n = r.graph.size();
    for (Index v = 0; v < n; ++v)
      for (Index u = 0; u < n; ++u) {
        const Index ov = r.origin[static_cast<std::size_t>(v)], ou = r.origin[static_cast<std::size_t>(u)];
        if (ov == ou) {
          CHECK_FALSE(r.graph.has_edge(u, v));
        } else {
          CHECK(r.graph.weight(u, v) == g.weight(ou, ov));
        }
      }
  }
}

TEST_CASE("clone_vertices: mean output size matches the truncated geometric mean")
{
  // E[min(1 + Geo(0.2) failures, 10)] and its variance by direct summation.
  double mean = 0.0, second = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double pk = k < 10 ? std::pow(0.8, k - 1) * 0.2 : std::pow(0.8, 9);
    mean += k * pk;
    second += double(k) * k * pk;
  }
  CHECK(mean == doctest::Approx((1.0 - std::pow(0.8, 10)) / 0.2));
  const double var = second - mean * mean;

  const Graph g = sample_er(100, 0.5, 1);
  Rng rng = make_stream(18);
  const int samples = 400;
  double total = 0.0;
  for (int k = 0; k < samples; ++k) total += static_cast<double>(clone_vertices(g, CloneParams{}, rng).graph.size());
  const double se = std::sqrt(100.0 * var / samples);
  CHECK(std::abs(total / samples - 100.0 * mean) < 3.0 * se);
}

TEST_CASE("graph transforms")
{
  const Graph g = lollipop(4, 3);
  CHECK(g.edge_count() == 6 + 3);
  const std::vector<Index> perm{6, 5, 4, 3, 2, 1, 0};
  const Graph h = g.relabeled(perm);
  for (Index i = 0; i < 7; ++i)
    for (Index j = 0; j < 7; ++j) CHECK(h.weight(perm[i], perm[j]) == g.weight(i, j));
  CHECK_THROWS_AS(g.relabeled({0, 0, 1, 2, 3, 4, 5}), Error);

  const Graph sub = g.induced({3, 4, 5});
  CHECK(sub.size() == 3);
  CHECK(sub.has_edge(0, 1));
  CHECK_FALSE(sub.has_edge(0, 2));

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 1) = 2.0;
  w(1, 0) = 3.0;
  w(2, 1) = 1.5;
  const Graph d(w, true);
  CHECK(d.symmetrized().weight(0, 1) == 3.0);
  CHECK(d.symmetrized().weight(1, 2) == 1.5);
  CHECK(d.binarized().weight(1, 0) == 1.0);
  CHECK(d.edge_count() == 3);
}

TEST_CASE("connected components and connected sampling")
{
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(6, 6);
  w(0, 1) = w(1, 0) = 1.0;
  w(1, 2) = w(2, 1) = 1.0;
  w(4, 5) = w(5, 4) = 1.0;
  const Graph g(w);
  const auto comps = connected_components(g);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<Index>{0, 1, 2});
  CHECK(comps[1] == std::vector<Index>{3});
  CHECK(comps[2] == std::vector<Index>{4, 5});

  Rng rng = make_stream(19);
  CHECK_THROWS_AS(sample_connected_vertices(g, 4, rng), Error);
  const Graph big = sample_er(80, 0.05, 2);
  for (int k = 0; k < 10; ++k) {
    const auto chosen = sample_connected_vertices(big, 20, rng);
    CHECK(chosen.size() == 20);
    CHECK(connected_components(big.induced(chosen)).size() == 1);
  }
}
