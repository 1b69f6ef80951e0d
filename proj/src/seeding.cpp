#include "jofc/seeding.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace jofc {

Seeding::Seeding(Index n1, Index n2, Matching pairs, Matching unknown)
    : n1_(n1), n2_(n2), pairs_(std::move(pairs)), unknown_(std::move(unknown))
{
  pairs_.check_bounds(n1_, n2_);
  unknown_.check_bounds(n1_, n2_);
  partners1_ = pairs_.forward(n1_);
  partners2_ = pairs_.backward(n2_);
  position1_.assign(static_cast<std::size_t>(n1_), -1);
  position2_.assign(static_cast<std::size_t>(n2_), -1);
  for (Index i = 0; i < n1_; ++i) {
    if (partners1_[static_cast<std::size_t>(i)].empty()) {
      unseeded1_.push_back(i);
    } else {
      position1_[static_cast<std::size_t>(i)] = s1();
      seeds1_.push_back(i);
    }
  }
  for (Index j = 0; j < n2_; ++j) {
    if (partners2_[static_cast<std::size_t>(j)].empty()) {
      unseeded2_.push_back(j);
    } else {
      position2_[static_cast<std::size_t>(j)] = s2();
      seeds2_.push_back(j);
    }
  }
  for (const auto& [i, j] : unknown_.pairs()) {
    if (!is_seed1(i) || !is_seed2(j))
      throw Error("seeding: unknown pair (" + std::to_string(i + 1) + ", " +
                  std::to_string(j + 1) + ") must join two seeds");
    if (matched(i, j))
      throw Error("seeding: pair (" + std::to_string(i + 1) + ", " +
                  std::to_string(j + 1) + ") is both seeded and unknown");
  }
}

Seeding Seeding::transposed() const
{
  return Seeding(n2_, n1_, pairs_.transposed(), unknown_.transposed());
}

std::vector<std::string> Seeding::check_against(const Matching& truth) const
{
  std::vector<std::string> warnings;
  auto pair_name = [](Index i, Index j) {
    return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
  };
  for (const auto& [i, j] : pairs_.pairs())
    if (!truth.contains(i, j)) warnings.push_back("seed pair " + pair_name(i, j) + " is not in the matching");
  for (const auto& [i, j] : truth.pairs()) {
    if (i >= n1_ || j >= n2_) continue;
    const bool seed_i = is_seed1(i), seed_j = is_seed2(j);
    if (seed_i && seed_j && !matched(i, j) && !is_unknown(i, j))
      warnings.push_back("matched seeds " + pair_name(i, j) + " are missing from the seeding");
    else if (seed_i != seed_j)
      warnings.push_back("matched pair " + pair_name(i, j) + " joins a seed to an unseeded vertex");
  }
  return warnings;
}

Seeding read_seeding(std::istream& in, Index n1, Index n2)
{
  return Seeding(n1, n2, read_matching(in));
}

Seeding load_seeding(const std::filesystem::path& path, Index n1, Index n2)
{
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_seeding(in, n1, n2);
}

double impute_delta(const DissimilarityMatrix& d1, const DissimilarityMatrix& d2,
                    const Seeding& s, Index i, Index j)
{
  if (i < 0 || i >= s.n1() || j < 0 || j >= s.n2() || !s.is_seed1(i) || !s.is_seed2(j))
    throw Error("impute_delta: both vertices must be seeds");
  if (s.matched(i, j)) return 0.0;

  double via_graph2 = 0.0;
  for (Index y : s.partners1(i)) via_graph2 += d2(y, j);
  via_graph2 /= static_cast<double>(s.partners1(i).size());

  double via_graph1 = 0.0;
  for (Index x : s.partners2(j)) via_graph1 += d1(i, x);
  via_graph1 /= static_cast<double>(s.partners2(j).size());

  return 0.5 * (via_graph2 + via_graph1);
}

OmnibusMatrix build_omnibus(const DissimilarityMatrix& d1,
                            const DissimilarityMatrix& d2, const Seeding& s)
{
  if (s.empty()) throw Error("build_omnibus: seeding is empty");
  if (d1.size() != s.n1() || d2.size() != s.n2())
    throw Error("build_omnibus: dissimilarity sizes do not match the seeding");

  const Index s1 = s.s1(), s2 = s.s2();
  OmnibusMatrix omni{Eigen::MatrixXd::Zero(s1 + s2, s1 + s2), s1, s2};
  const auto& seeds1 = s.seeds1();
  const auto& seeds2 = s.seeds2();
  for (Index b = 0; b < s1; ++b)
    for (Index a = 0; a < s1; ++a)
      omni.values(a, b) = d1(seeds1[static_cast<std::size_t>(a)], seeds1[static_cast<std::size_t>(b)]);
  for (Index b = 0; b < s2; ++b)
    for (Index a = 0; a < s2; ++a)
      omni.values(s1 + a, s1 + b) = d2(seeds2[static_cast<std::size_t>(a)], seeds2[static_cast<std::size_t>(b)]);
  for (Index b = 0; b < s2; ++b)
    for (Index a = 0; a < s1; ++a) {
      const double delta = impute_delta(d1, d2, s, seeds1[static_cast<std::size_t>(a)],
                                        seeds2[static_cast<std::size_t>(b)]);
      omni.values(a, s1 + b) = omni.values(s1 + b, a) = delta;
    }
  return omni;
}

} // namespace jofc
