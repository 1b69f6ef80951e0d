#pragma once

#include "jofc/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace jofc {

/// A vertex pair (i in graph 1, j in graph 2), 0-based.
using VertexPair = std::pair<Index, Index>;

/// A subset of V1 x V2. Pairs are kept sorted lexicographically and are
/// unique; a vertex may appear in any number of pairs.
class Matching {
public:
  Matching() = default;

  /// Throws Error on duplicate or negative pairs.
  explicit Matching(std::vector<VertexPair> pairs);

  const std::vector<VertexPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  bool contains(Index i, Index j) const;

  /// M(i) for every i < n1, each list sorted.
  std::vector<std::vector<Index>> forward(Index n1) const;
  /// M(j) for every j < n2, each list sorted.
  std::vector<std::vector<Index>> backward(Index n2) const;

  /// Swaps the roles of the two graphs.
  Matching transposed() const;

  /// Throws unless every pair lies in [0,n1) x [0,n2).
  void check_bounds(Index n1, Index n2) const;

  bool operator==(const Matching&) const = default;

private:
  std::vector<VertexPair> pairs_;
};

/// "i j" lines with 1-based ids; lines starting with '#' and blank lines are
/// skipped.
Matching read_matching(std::istream& in);
Matching load_matching(const std::filesystem::path& path);

/// Writes a two-line header naming the graphs, then one "i j" line per pair.
void write_matching(const Matching& m, std::ostream& out,
                    const std::string& graph1 = "G1",
                    const std::string& graph2 = "G2");
void save_matching(const Matching& m, const std::filesystem::path& path,
                   const std::string& graph1 = "G1",
                   const std::string& graph2 = "G2");

} // namespace jofc
