#include "jofc/assignment.hpp"

#include <algorithm>
#include <cmath>

namespace jofc {

namespace {

void check_costs(const CostMatrix& cost, const char* who)
{
  if (cost.rows() == 0 || cost.cols() == 0) throw Error(std::string(who) + ": empty cost matrix");
  if (!cost.allFinite() || (cost.array() < 0.0).any())
    throw Error(std::string(who) + ": costs must be finite and nonnegative");
}

Index argmin_in_row(const CostMatrix& cost, Index i)
{
  Index best = 0;
  for (Index j = 1; j < cost.cols(); ++j)
    if (cost(i, j) < cost(i, best)) best = j;
  return best;
}

Index argmin_in_col(const CostMatrix& cost, Index j)
{
  Index best = 0;
  for (Index i = 1; i < cost.rows(); ++i)
    if (cost(i, j) < cost(best, j)) best = i;
  return best;
}

/// Assignment of the rectangular matrix padded with `pad`; -1 for rows
/// assigned to padding.
std::vector<Index> padded_assignment(const Eigen::MatrixXd& cost, double pad)
{
  const Index n = std::max(cost.rows(), cost.cols());
  Eigen::MatrixXd square = Eigen::MatrixXd::Constant(n, n, pad);
  square.topLeftCorner(cost.rows(), cost.cols()) = cost;
  std::vector<Index> assigned = solve_lap(square);
  std::vector<Index> rows(static_cast<std::size_t>(cost.rows()), -1);
  for (Index i = 0; i < cost.rows(); ++i) {
    const Index j = assigned[static_cast<std::size_t>(i)];
    if (j < cost.cols()) rows[static_cast<std::size_t>(i)] = j;
  }
  return rows;
}

} // namespace

double matching_cost(const CostMatrix& cost, const Matching& m)
{
  double total = 0.0;
  for (const auto& [i, j] : m.pairs()) total += cost(i, j);
  return total;
}

Matching hungarian(const CostMatrix& cost)
{
  check_costs(cost, "hungarian");
  const double top = cost.maxCoeff();
  const double pad = top > 0.0 ? 10.0 * top : 1.0;
  const std::vector<Index> rows = padded_assignment(cost, pad);
  std::vector<VertexPair> pairs;
  for (Index i = 0; i < cost.rows(); ++i)
    if (rows[static_cast<std::size_t>(i)] >= 0) pairs.emplace_back(i, rows[static_cast<std::size_t>(i)]);
  return Matching(std::move(pairs));
}

Matching min_cost_edge_cover(const CostMatrix& cost)
{
  check_costs(cost, "min_cost_edge_cover");
  // Cover = cheapest edge at every vertex, improved by a matching on the
  // reduced costs c'(i,j) = c(i,j) - min_row(i) - min_col(j); only edges with
  // c' < 0 pay off, so nonnegative reduced costs are clipped to zero.
  const Eigen::VectorXd row_min = cost.rowwise().minCoeff();
  const Eigen::RowVectorXd col_min = cost.colwise().minCoeff();
  Eigen::MatrixXd reduced = cost;
  reduced.colwise() -= row_min;
  reduced.rowwise() -= col_min;
  const std::vector<Index> rows = padded_assignment(reduced.cwiseMin(0.0), 0.0);

  std::vector<VertexPair> pairs;
  std::vector<char> row_done(static_cast<std::size_t>(cost.rows()), 0);
  std::vector<char> col_done(static_cast<std::size_t>(cost.cols()), 0);
  for (Index i = 0; i < cost.rows(); ++i) {
    const Index j = rows[static_cast<std::size_t>(i)];
    if (j >= 0 && reduced(i, j) < 0.0) {
      pairs.emplace_back(i, j);
      row_done[static_cast<std::size_t>(i)] = col_done[static_cast<std::size_t>(j)] = 1;
    }
  }
  for (Index i = 0; i < cost.rows(); ++i)
    if (!row_done[static_cast<std::size_t>(i)]) pairs.emplace_back(i, argmin_in_row(cost, i));
  for (Index j = 0; j < cost.cols(); ++j) {
    if (col_done[static_cast<std::size_t>(j)]) continue;
    const VertexPair p{argmin_in_col(cost, j), j};
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
  }
  return Matching(std::move(pairs));
}

Matching gap_match(const CostMatrix& cost, const GapOptions& opts)
{
  check_costs(cost, "gap_match");
  const Index u1 = cost.rows(), u2 = cost.cols();
  const double top = cost.maxCoeff();
  const std::vector<Index> rows = padded_assignment(cost, top > 0.0 ? 10.0 * top : 1.0);

  std::vector<std::vector<Index>> partners(static_cast<std::size_t>(u1));
  std::vector<char> col_used(static_cast<std::size_t>(u2), 0);
  for (Index i = 0; i < u1; ++i) {
    const Index j = rows[static_cast<std::size_t>(i)];
    if (j < 0) continue;
    partners[static_cast<std::size_t>(i)].push_back(j);
    col_used[static_cast<std::size_t>(j)] = 1;
  }
  // Coverage of rows the LAP could not serve (u1 > u2).
  for (Index i = 0; i < u1; ++i)
    if (partners[static_cast<std::size_t>(i)].empty())
      partners[static_cast<std::size_t>(i)].push_back(argmin_in_row(cost, i));

  std::vector<std::pair<double, Index>> leftovers;
  for (Index j = 0; j < u2; ++j)
    if (!col_used[static_cast<std::size_t>(j)]) leftovers.emplace_back(cost.col(j).minCoeff(), j);
  std::sort(leftovers.begin(), leftovers.end());
  for (const auto& [unused, j] : leftovers) {
    const Index i = argmin_in_col(cost, j);
    auto& mine = partners[static_cast<std::size_t>(i)];
    if (std::find(mine.begin(), mine.end(), j) != mine.end()) continue;
    if (opts.attach == GapOptions::Attach::below_mean) {
      double mean = 0.0;
      for (Index k : mine) mean += cost(i, k);
      mean /= static_cast<double>(mine.size());
      if (!(cost(i, j) < mean)) continue;
    }
    mine.push_back(j);
  }

  std::vector<VertexPair> pairs;
  for (Index i = 0; i < u1; ++i)
    for (Index j : partners[static_cast<std::size_t>(i)]) pairs.emplace_back(i, j);
  return Matching(std::move(pairs));
}

MatchEvaluation evaluate_match(const Matching& est, const Matching& truth, const Seeding& s)
{
  MatchEvaluation out;
  out.u1 = s.u1();
  out.u2 = s.u2();
  const auto est1 = est.forward(s.n1()), est2 = est.backward(s.n2());
  const auto truth1 = truth.forward(s.n1()), truth2 = truth.backward(s.n2());

  auto restricted = [&](const std::vector<Index>& partners, bool to_graph2) {
    std::vector<Index> kept;
    for (Index v : partners)
      if (to_graph2 ? !s.is_seed2(v) : !s.is_seed1(v)) kept.push_back(v);
    return kept;
  };

  bool bijective = out.u1 == out.u2;
  for (Index i : s.unseeded1()) {
    const auto t = restricted(truth1[static_cast<std::size_t>(i)], true);
    if (t.size() != 1) bijective = false;
    if (restricted(est1[static_cast<std::size_t>(i)], true) == t) ++out.correct1;
  }
  for (Index j : s.unseeded2()) {
    const auto t = restricted(truth2[static_cast<std::size_t>(j)], false);
    if (t.size() != 1) bijective = false;
    if (restricted(est2[static_cast<std::size_t>(j)], false) == t) ++out.correct2;
  }
  out.bijective = bijective;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.ratio1 = out.u1 > 0 ? static_cast<double>(out.correct1) / static_cast<double>(out.u1) : nan;
  out.ratio2 = out.u2 > 0 ? static_cast<double>(out.correct2) / static_cast<double>(out.u2) : nan;
  if (bijective)
    out.ratio = out.ratio1;
  else
    out.ratio = out.u1 + out.u2 > 0
                    ? static_cast<double>(out.correct1 + out.correct2) / static_cast<double>(out.u1 + out.u2)
                    : nan;
  return out;
}

Index edge_disagreement(const Graph& g1, const Graph& g2, const Matching& phi)
{
  const Index n = g1.size();
  if (g2.size() != n) throw Error("edge_disagreement: graphs differ in size");
  phi.check_bounds(n, n);
  std::vector<Index> image(static_cast<std::size_t>(n), -1);
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j] : phi.pairs()) {
    if (image[static_cast<std::size_t>(i)] >= 0 || hit[static_cast<std::size_t>(j)])
      throw Error("edge_disagreement: phi is not a bijection");
    image[static_cast<std::size_t>(i)] = j;
    hit[static_cast<std::size_t>(j)] = 1;
  }
  if (static_cast<Index>(phi.size()) != n) throw Error("edge_disagreement: phi is not a bijection");

  Index count = 0;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (g1.has_edge(i, j) != g2.has_edge(image[static_cast<std::size_t>(i)], image[static_cast<std::size_t>(j)]))
        ++count;
  return count;
}

} // namespace jofc
