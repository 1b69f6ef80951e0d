#include "jofc/dissimilarity.hpp"

#include "jofc/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

namespace jofc {

DissimilarityMatrix::DissimilarityMatrix(Eigen::MatrixXd values)
    : values_(std::move(values))
{
  if (values_.rows() != values_.cols())
    throw Error("dissimilarity matrix must be square");
  if (!values_.allFinite() || (values_.array() < 0.0).any())
    throw Error("dissimilarity entries must be finite and nonnegative");
  if ((values_.diagonal().array() != 0.0).any())
    throw Error("dissimilarity matrix must have a zero diagonal");
  if (values_ != values_.transpose())
    throw Error("dissimilarity matrix must be symmetric");
}

namespace {

std::string describe_components(const std::vector<std::vector<Index>>& comps)
{
  std::string out = std::to_string(comps.size()) + " components:";
  for (const auto& c : comps) {
    out += " {";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k == 8) {
        out += ", ... (" + std::to_string(c.size()) + " vertices)";
        break;
      }
      out += (k ? ", " : "") + std::to_string(c[k] + 1);
    }
    out += "}";
  }
  return out;
}

} // namespace

DissimilarityMatrix shortest_path_dissimilarity(const Graph& g)
{
  const Graph sym = g.directed() ? g.symmetrized() : g;
  const auto comps = connected_components(sym);
  if (comps.size() > 1)
    throw Error("shortest_path: graph is disconnected, " + describe_components(comps));

  const Index n = sym.size();
  Eigen::MatrixXd length = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (i != j && sym.has_edge(i, j)) length(i, j) = 1.0 / sym.weight(i, j);

  // Dense Dijkstra from every source; O(n^2) per source.
  Eigen::MatrixXd dist(n, n);
  parallel_for(static_cast<std::size_t>(n), 1, [&](std::size_t src) {
    const Index s = static_cast<Index>(src);
    Eigen::VectorXd best = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    best(s) = 0.0;
    for (Index round = 0; round < n; ++round) {
      Index u = -1;
      for (Index v = 0; v < n; ++v)
        if (!done[static_cast<std::size_t>(v)] && (u < 0 || best(v) < best(u))) u = v;
      done[static_cast<std::size_t>(u)] = 1;
      for (Index v = 0; v < n; ++v)
        if (!done[static_cast<std::size_t>(v)])
          best(v) = std::min(best(v), best(u) + length(u, v));
    }
    dist.col(s) = best;
  });
  // Sums along a path and its reverse may round differently on weighted graphs.
  Eigen::MatrixXd sym_dist = dist.cwiseMin(dist.transpose());
  return DissimilarityMatrix(std::move(sym_dist));
}

DissimilarityMatrix weighted_dice_dissimilarity(const Graph& g)
{
  const Index n = g.size();
  Eigen::MatrixXd closed = g.weights();
  for (Index i = 0; i < n; ++i) {
    const double incident = std::max(g.weights().row(i).maxCoeff(), g.weights().col(i).maxCoeff());
    if (incident == 0.0)
      throw Error("weighted_dice: vertex " + std::to_string(i + 1) + " is isolated");
    closed(i, i) = std::max(closed(i, i), incident);
  }

  // overlap(i,j) = sum_k min(closed(i,k), closed(j,k)) [+ column term]
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i <= j; ++i) {
      double s = closed.row(i).cwiseMin(closed.row(j)).sum();
      if (g.directed()) s += closed.col(i).cwiseMin(closed.col(j)).sum();
      overlap(i, j) = overlap(j, i) = s;
    }

  Eigen::MatrixXd dice(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      dice(i, j) = i == j ? 0.0 : 1.0 - 2.0 * overlap(i, j) / (overlap(i, i) + overlap(j, j));
  return DissimilarityMatrix(dice.cwiseMax(0.0));
}

DissimilarityMatrix normalize(const DissimilarityMatrix& d)
{
  const double top = d.size() > 0 ? d.values().maxCoeff() : 0.0;
  if (top <= 0.0) throw Error("normalize: dissimilarity matrix is all zero");
  return DissimilarityMatrix(d.values() / top);
}

void write_dissimilarity_csv(const DissimilarityMatrix& d, std::ostream& out)
{
  char buf[64];
  out << d.size() << '\n';
  for (Index i = 0; i < d.size(); ++i) {
    for (Index j = 0; j < d.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", d(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

DissimilarityMatrix read_dissimilarity_csv(std::istream& in)
{
  std::string line;
  long long n = -1;
  if (!std::getline(in, line) || !(std::istringstream(line) >> n) || n < 0)
    throw Error("dissimilarity csv: missing size header");
  Eigen::MatrixXd values(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw Error("dissimilarity csv: truncated");
    std::istringstream row(line);
    std::string cell;
    for (Index j = 0; j < n; ++j) {
      if (!std::getline(row, cell, ',')) throw Error("dissimilarity csv: short row");
      values(i, j) = std::stod(cell);
    }
  }
  return DissimilarityMatrix(std::move(values));
}

} // namespace jofc
