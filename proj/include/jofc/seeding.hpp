#pragma once

#include "jofc/dissimilarity.hpp"
#include "jofc/matching.hpp"
#include "jofc/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace jofc {

/// A known partial matching S between V1 and V2, together with the induced
/// seed/unseeded partition of both vertex sets. Pairs of seeds whose
/// matchedness is not known may be listed as `unknown`; they are neither in
/// S nor in S'.
class Seeding {
public:
  Seeding() = default;
  Seeding(Index n1, Index n2, Matching pairs, Matching unknown = {});

  Index n1() const noexcept { return n1_; }
  Index n2() const noexcept { return n2_; }
  const Matching& pairs() const noexcept { return pairs_; }
  const Matching& unknown() const noexcept { return unknown_; }
  bool empty() const noexcept { return pairs_.empty(); }

  /// Sorted seed / unseeded vertex lists of each graph.
  const std::vector<Index>& seeds1() const noexcept { return seeds1_; }
  const std::vector<Index>& seeds2() const noexcept { return seeds2_; }
  const std::vector<Index>& unseeded1() const noexcept { return unseeded1_; }
  const std::vector<Index>& unseeded2() const noexcept { return unseeded2_; }
  Index s1() const noexcept { return static_cast<Index>(seeds1_.size()); }
  Index s2() const noexcept { return static_cast<Index>(seeds2_.size()); }
  Index u1() const noexcept { return static_cast<Index>(unseeded1_.size()); }
  Index u2() const noexcept { return static_cast<Index>(unseeded2_.size()); }

  /// S(i) for i in V1 / S(j) for j in V2; empty for unseeded vertices.
  const std::vector<Index>& partners1(Index i) const { return partners1_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& partners2(Index j) const { return partners2_[static_cast<std::size_t>(j)]; }

  bool is_seed1(Index i) const { return !partners1(i).empty(); }
  bool is_seed2(Index j) const { return !partners2(j).empty(); }
  bool matched(Index i, Index j) const { return pairs_.contains(i, j); }
  bool is_unknown(Index i, Index j) const { return unknown_.contains(i, j); }

  /// Position of a seed within seeds1() / seeds2(); -1 when unseeded.
  Index position1(Index i) const { return position1_[static_cast<std::size_t>(i)]; }
  Index position2(Index j) const { return position2_[static_cast<std::size_t>(j)]; }

  /// Roles of the two graphs swapped.
  Seeding transposed() const;

  /// Warnings for every way `truth` contradicts the seeding assumptions:
  /// seeds matched outside S, seeds matched to unseeded vertices, S not a
  /// subset of the truth. Empty when consistent.
  std::vector<std::string> check_against(const Matching& truth) const;

private:
  Index n1_ = 0, n2_ = 0;
  Matching pairs_, unknown_;
  std::vector<Index> seeds1_, seeds2_, unseeded1_, unseeded2_;
  std::vector<std::vector<Index>> partners1_, partners2_;
  std::vector<Index> position1_, position2_;
};

/// Seed file: "i j" lines (1-based, graph-1 id then graph-2 id).
Seeding read_seeding(std::istream& in, Index n1, Index n2);
Seeding load_seeding(const std::filesystem::path& path, Index n1, Index n2);

/// Cross-graph dissimilarity between seeds i in S1 and j in S2: 0 when
/// (i,j) is in S, otherwise the mean of the average Delta2(y,j) over y in S(i)
/// and the average Delta1(i,x) over x in S(j).
double impute_delta(const DissimilarityMatrix& d1, const DissimilarityMatrix& d2,
                    const Seeding& s, Index i, Index j);

/// The (s1+s2) x (s1+s2) omnibus matrix [[D1_SS, delta], [delta^T, D2_SS]],
/// rows ordered as seeds1() followed by seeds2().
struct OmnibusMatrix {
  Eigen::MatrixXd values;
  Index s1 = 0;
  Index s2 = 0;

  Index size() const noexcept { return values.rows(); }
  auto delta() const { return values.topRightCorner(s1, s2); }
};

OmnibusMatrix build_omnibus(const DissimilarityMatrix& d1,
                            const DissimilarityMatrix& d2, const Seeding& s);

} // namespace jofc
