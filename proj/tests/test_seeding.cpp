#include "jofc/seeding.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace jofc;
using namespace jofc::test;

namespace {

DissimilarityMatrix random_normalized(Index n, Rng& rng)
{
  return normalize(DissimilarityMatrix(random_dissimilarities(n, rng)));
}

/// Random seeding in which every seed of either graph has 1..3 partners.
Matching random_seed_pairs(Index n1, Index n2, Index s1, Index s2, Rng& rng)
{
  std::vector<VertexPair> pairs;
  std::uniform_int_distribution<Index> pick2(0, s2 - 1), extra(0, 2);
  for (Index i = 0; i < s1; ++i) {
    pairs.emplace_back(i, pick2(rng));
    for (Index e = extra(rng); e > 0; --e) pairs.emplace_back(i, pick2(rng));
  }
  std::uniform_int_distribution<Index> pick1(0, s1 - 1);
  for (Index j = 0; j < s2; ++j) pairs.emplace_back(pick1(rng), j);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (auto [i, j] : pairs) REQUIRE((i < n1 && j < n2));
  return Matching(pairs);
}

} // namespace

TEST_CASE("matching keeps pairs sorted and rejects duplicates")
{
  const Matching m({{2, 0}, {0, 1}, {0, 0}});
  CHECK(m.pairs() == std::vector<VertexPair>{{0, 0}, {0, 1}, {2, 0}});
  CHECK(m.contains(2, 0));
  CHECK_FALSE(m.contains(1, 0));
  CHECK(m.forward(3) == std::vector<std::vector<Index>>{{0, 1}, {}, {0}});
  CHECK(m.backward(2) == std::vector<std::vector<Index>>{{0, 2}, {0}});
  CHECK(m.transposed().pairs() == std::vector<VertexPair>{{0, 0}, {0, 2}, {1, 0}});
  CHECK_THROWS_AS(Matching({{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(Matching({{-1, 0}}), Error);
  CHECK_THROWS_AS(m.check_bounds(2, 2), Error);
}

TEST_CASE("matching text round trip")
{
  const Matching m({{0, 3}, {4, 1}, {4, 2}});
  std::ostringstream out;
  write_matching(m, out, "left", "right");
  std::istringstream in(out.str());
  CHECK(read_matching(in) == m);

  std::istringstream bad("1 x\n");
  CHECK_THROWS_AS(read_matching(bad), Error);
  std::istringstream zero("0 1\n");
  CHECK_THROWS_AS(read_matching(zero), Error);
}

TEST_CASE("seeding partitions both vertex sets")
{
  const Seeding s(5, 4, Matching({{0, 1}, {0, 2}, {3, 1}}));
  CHECK(s.seeds1() == std::vector<Index>{0, 3});
  CHECK(s.unseeded1() == std::vector<Index>{1, 2, 4});
  CHECK(s.seeds2() == std::vector<Index>{1, 2});
  CHECK(s.unseeded2() == std::vector<Index>{0, 3});
  CHECK(s.s1() + s.u1() == 5);
  CHECK(s.s2() + s.u2() == 4);
  CHECK(s.position1(3) == 1);
  CHECK(s.position1(1) == -1);
  CHECK(s.partners2(1) == std::vector<Index>{0, 3});

  const Seeding t = s.transposed();
  CHECK(t.n1() == 4);
  CHECK(t.seeds1() == s.seeds2());
  CHECK(t.unseeded2() == s.unseeded1());

  CHECK_THROWS_AS(Seeding(2, 2, Matching({{2, 0}})), Error);
}

TEST_CASE("seed file uses 1-based ids")
{
  std::istringstream in("# seeds\n1 2\n3 1\n");
  const Seeding s = read_seeding(in, 3, 2);
  CHECK(s.pairs() == Matching({{0, 1}, {2, 0}}));
}

TEST_CASE("unknown pairs must join two seeds outside S")
{
  const Matching pairs({{0, 0}, {1, 1}});
  const Seeding s(3, 3, pairs, Matching({{0, 1}}));
  CHECK(s.is_unknown(0, 1));
  CHECK_FALSE(s.matched(0, 1));
  CHECK_THROWS_AS(Seeding(3, 3, pairs, Matching({{0, 2}})), Error);
  CHECK_THROWS_AS(Seeding(3, 3, pairs, Matching({{0, 0}})), Error);
}

TEST_CASE("check_against reports each kind of inconsistency")
{
  const Seeding s(4, 4, Matching({{0, 0}, {1, 1}}));
  CHECK(s.check_against(Matching({{0, 0}, {1, 1}, {2, 2}, {3, 3}})).empty());

  const auto outside = s.check_against(Matching({{0, 0}, {1, 2}}));
  REQUIRE(outside.size() == 2);
  CHECK(outside[0].find("(2, 2)") != std::string::npos);
  CHECK(outside[1].find("joins a seed") != std::string::npos);

  const auto missing = s.check_against(Matching({{0, 0}, {0, 1}, {1, 1}}));
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].find("missing from the seeding") != std::string::npos);
}

TEST_CASE("impute_delta hand cases")
{
  SUBCASE("matched pair is zero")
  {
    Rng rng(3);
    const auto d1 = random_normalized(4, rng);
    const auto d2 = random_normalized(4, rng);
    const Seeding s(4, 4, Matching({{0, 0}, {1, 1}}));
    CHECK(impute_delta(d1, d2, s, 0, 0) == 0.0);
    CHECK(impute_delta(d1, d2, s, 1, 1) == 0.0);
  }
  SUBCASE("one seed matched twice")
  {
    // i = 0 matched to a = 0 and b = 1; j = 2 matched to c = 1.
    Eigen::MatrixXd a1(2, 2);
    a1 << 0, 1, 1, 0;
    Eigen::MatrixXd a2(3, 3);
    a2 << 0, 3, 2, 3, 0, 4, 2, 4, 0;
    const Seeding s(2, 3, Matching({{0, 0}, {0, 1}, {1, 2}}));
    CHECK(impute_delta(DissimilarityMatrix(a1), DissimilarityMatrix(a2), s, 0, 2) == 2.0);
  }
  SUBCASE("unseeded argument")
  {
    Rng rng(4);
    const auto d = random_normalized(3, rng);
    const Seeding s(3, 3, Matching({{0, 0}, {1, 1}}));
    CHECK_THROWS_AS(impute_delta(d, d, s, 2, 0), Error);
    CHECK_THROWS_AS(impute_delta(d, d, s, 0, 2), Error);
  }
}

TEST_CASE("impute_delta reduces to the two-term average for one-to-one seedings")
{
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 8, k = 5;
    const auto d1 = random_normalized(n, rng);
    const auto d2 = random_normalized(n, rng);
    std::vector<Index> perm = identity(k);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VertexPair> pairs;
    for (Index i = 0; i < k; ++i) pairs.emplace_back(i, perm[static_cast<std::size_t>(i)]);
    const Seeding s(n, n, Matching(pairs));
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j) {
        if (s.matched(i, j)) continue;
        const Index ip = perm[static_cast<std::size_t>(i)];
        const Index jp = s.partners2(j).front();
        CHECK(impute_delta(d1, d2, s, i, j) == (d1(i, jp) + d2(ip, j)) / 2.0);
      }
  }
}

TEST_CASE("impute_delta is symmetric under swapping the graphs")
{
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n1 = 7, n2 = 9;
    const auto d1 = random_normalized(n1, rng);
    const auto d2 = random_normalized(n2, rng);
    const Seeding s(n1, n2, random_seed_pairs(n1, n2, 4, 6, rng));
    const Seeding t = s.transposed();
    for (Index i : s.seeds1())
      for (Index j : s.seeds2())
        CHECK(impute_delta(d1, d2, s, i, j) == doctest::Approx(impute_delta(d2, d1, t, j, i)).epsilon(1e-15));
  }
}

TEST_CASE("build_omnibus")
{
  SUBCASE("lone matched pair")
  {
    Rng rng(5);
    const auto d = random_normalized(3, rng);
    const OmnibusMatrix omni = build_omnibus(d, d, Seeding(3, 3, Matching({{1, 2}})));
    CHECK(omni.size() == 2);
    CHECK(omni.values.isZero(0.0));
  }
  SUBCASE("identical graphs with identity seeding duplicate the seed block")
  {
    Rng rng(6);
    const Index n = 10, k = 6;
    const auto d = random_normalized(n, rng);
    std::vector<VertexPair> pairs;
    for (Index i = 0; i < k; ++i) pairs.emplace_back(i, i);
    const OmnibusMatrix omni = build_omnibus(d, d, Seeding(n, n, Matching(pairs)));
    const Eigen::MatrixXd block = d.values().topLeftCorner(k, k);
    CHECK(omni.values.topLeftCorner(k, k) == block);
    CHECK(omni.values.bottomRightCorner(k, k) == block);
    CHECK(Eigen::MatrixXd(omni.delta()) == block);
  }
  SUBCASE("random seedings are symmetric, in [0,1], and zero exactly on S")
  {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const Index n1 = 9, n2 = 11;
      const auto d1 = random_normalized(n1, rng);
      const auto d2 = random_normalized(n2, rng);
      const Seeding s(n1, n2, random_seed_pairs(n1, n2, 5, 7, rng));
      const OmnibusMatrix omni = build_omnibus(d1, d2, s);
      CHECK(omni.size() == s.s1() + s.s2());
      CHECK(omni.values == omni.values.transpose());
      CHECK(omni.values.minCoeff() >= 0.0);
      CHECK(omni.values.maxCoeff() <= 1.0);
      for (Index a = 0; a < s.s1(); ++a)
        for (Index b = 0; b < s.s2(); ++b) {
          const Index i = s.seeds1()[static_cast<std::size_t>(a)];
          const Index j = s.seeds2()[static_cast<std::size_t>(b)];
          CHECK((omni.delta()(a, b) == 0.0) == s.matched(i, j));
        }
    }
  }
  SUBCASE("empty seeding")
  {
    Rng rng(8);
    const auto d = random_normalized(3, rng);
    CHECK_THROWS_AS(build_omnibus(d, d, Seeding(3, 3, Matching())), Error);
  }
}
