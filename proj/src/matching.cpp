#include "jofc/matching.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace jofc {

Matching::Matching(std::vector<VertexPair> pairs) : pairs_(std::move(pairs))
{
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    if (pairs_[k].first < 0 || pairs_[k].second < 0)
      throw Error("matching: negative vertex index");
    if (k > 0 && pairs_[k] == pairs_[k - 1])
      throw Error("matching: duplicate pair (" +
                  std::to_string(pairs_[k].first + 1) + ", " +
                  std::to_string(pairs_[k].second + 1) + ")");
  }
}

bool Matching::contains(Index i, Index j) const
{
  return std::binary_search(pairs_.begin(), pairs_.end(), VertexPair{i, j});
}

std::vector<std::vector<Index>> Matching::forward(Index n1) const
{
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n1));
  for (const auto& [i, j] : pairs_)
    if (i < n1) out[static_cast<std::size_t>(i)].push_back(j);
  return out;
}

std::vector<std::vector<Index>> Matching::backward(Index n2) const
{
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n2));
  for (const auto& [i, j] : pairs_)
    if (j < n2) out[static_cast<std::size_t>(j)].push_back(i);
  return out;
}

Matching Matching::transposed() const
{
  std::vector<VertexPair> swapped;
  swapped.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) swapped.emplace_back(j, i);
  return Matching(std::move(swapped));
}

void Matching::check_bounds(Index n1, Index n2) const
{
  for (const auto& [i, j] : pairs_)
    if (i >= n1 || j >= n2)
      throw Error("matching: pair (" + std::to_string(i + 1) + ", " +
                  std::to_string(j + 1) + ") outside vertex ranges");
}

Matching read_matching(std::istream& in)
{
  std::vector<VertexPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long i = 0, j = 0;
    std::string rest;
    if (!(fields >> i >> j) || (fields >> rest) || i < 1 || j < 1)
      throw Error("matching: cannot parse line " + std::to_string(lineno) +
                  ": '" + line + "'");
    pairs.emplace_back(static_cast<Index>(i - 1), static_cast<Index>(j - 1));
  }
  return Matching(std::move(pairs));
}

Matching load_matching(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_matching(in);
}

void write_matching(const Matching& m, std::ostream& out,
                    const std::string& graph1, const std::string& graph2)
{
  out << "# graph1: " << graph1 << '\n' << "# graph2: " << graph2 << '\n';
  for (const auto& [i, j] : m.pairs()) out << i + 1 << ' ' << j + 1 << '\n';
}

void save_matching(const Matching& m, const std::filesystem::path& path,
                   const std::string& graph1, const std::string& graph2)
{
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_matching(m, out, graph1, graph2);
}

} // namespace jofc
