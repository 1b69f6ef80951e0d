#include "jofc/sgm.hpp"

#include "jofc/assignment.hpp"

#include <cmath>

namespace jofc {

namespace {

struct Blocks {
  Eigen::MatrixXd s_s, s_u, u_s, u_u;
};

Blocks split(const Eigen::MatrixXd& m, Index seeds)
{
  const Index u = m.rows() - seeds;
  return {m.topLeftCorner(seeds, seeds), m.topRightCorner(seeds, u), m.bottomLeftCorner(u, seeds),
          m.bottomRightCorner(u, u)};
}

double inner(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) { return x.cwiseProduct(y).sum(); }

double objective_from_blocks(const Blocks& a, const Blocks& b, double norms, const Eigen::MatrixXd& p)
{
  const double overlap = inner(a.s_s, b.s_s) + inner(a.s_u, b.s_u * p.transpose()) +
                         inner(a.u_s, p * b.u_s) + inner(a.u_u, p * b.u_u * p.transpose());
  return norms - 2.0 * overlap;
}

Eigen::MatrixXd reorder(const Eigen::MatrixXd& w, const std::vector<Index>& order)
{
  const Index n = static_cast<Index>(order.size());
  Eigen::MatrixXd out(n, n);
  for (Index b = 0; b < n; ++b)
    for (Index a = 0; a < n; ++a)
      out(a, b) = w(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
  return out;
}

} // namespace

double sgm_objective(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& p_unseeded)
{
  const Index seeds = a.rows() - p_unseeded.rows();
  return objective_from_blocks(split(a, seeds), split(b, seeds), a.squaredNorm() + b.squaredNorm(), p_unseeded);
}

SgmResult sgm(const Graph& g1, const Graph& g2, const Seeding& s, const SgmOptions& opts)
{
  const Index n = g1.size();
  if (g2.size() != n) throw Error("sgm: graphs must have the same number of vertices");
  if (s.n1() != n || s.n2() != n) throw Error("sgm: seeding does not fit the graphs");
  if (s.s1() != s.s2() || static_cast<Index>(s.pairs().size()) != s.s1())
    throw Error("sgm: seeding must be one-to-one");

  std::vector<Index> order1 = s.seeds1(), order2;
  for (Index i : s.seeds1()) order2.push_back(s.partners1(i).front());
  order1.insert(order1.end(), s.unseeded1().begin(), s.unseeded1().end());
  order2.insert(order2.end(), s.unseeded2().begin(), s.unseeded2().end());

  const Index seeds = s.s1(), u = n - seeds;
  const Eigen::MatrixXd a_full = reorder(g1.weights(), order1);
  const Eigen::MatrixXd b_full = reorder(g2.weights(), order2);
  const Blocks a = split(a_full, seeds), b = split(b_full, seeds);
  const double norms = a_full.squaredNorm() + b_full.squaredNorm();

  SgmResult out;
  if (u == 0) {
    out.objective.push_back(objective_from_blocks(a, b, norms, Eigen::MatrixXd(0, 0)));
    return out;
  }

  // The seed-to-unseeded part of the gradient does not depend on P'.
  const Eigen::MatrixXd linear = a.s_u.transpose() * b.s_u + a.u_s * b.u_s.transpose();
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(u, u, 1.0 / static_cast<double>(u));
  auto marginal_error = [](const Eigen::MatrixXd& m) {
    return std::max((m.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                    (m.colwise().sum().array() - 1.0).abs().maxCoeff());
  };
  double value = objective_from_blocks(a, b, norms, p);
  out.objective.push_back(value);
  out.max_marginal_error = marginal_error(p);

  for (int it = 1; it <= opts.max_iters; ++it) {
    const Eigen::MatrixXd grad =
        -2.0 * (linear + a.u_u * p * b.u_u.transpose() + a.u_u.transpose() * p * b.u_u);
    const std::vector<Index> target = solve_lap(grad);
    Eigen::MatrixXd direction = -p;
    for (Index r = 0; r < u; ++r) direction(r, target[static_cast<std::size_t>(r)]) += 1.0;

    // q(P + t D) = q(P) + t c1 + t^2 c2 on t in [0, 1].
    const double c1 = inner(grad, direction);
    const double c2 = -2.0 * inner(a.u_u, direction * b.u_u * direction.transpose());
    double step;
    if (c2 > 0.0)
      step = std::clamp(-c1 / (2.0 * c2), 0.0, 1.0);
    else
      step = c1 + c2 < 0.0 ? 1.0 : 0.0;

    out.iterations = it;
    if (step <= opts.step_tol) break;
    p += step * direction;
    value = objective_from_blocks(a, b, norms, p);
    out.objective.push_back(value);
    out.max_marginal_error = std::max(out.max_marginal_error, marginal_error(p));
  }

  const Eigen::MatrixXd negated = -p;
  const std::vector<Index> projection = solve_lap(negated);
  std::vector<VertexPair> pairs;
  for (Index r = 0; r < u; ++r)
    pairs.emplace_back(s.unseeded1()[static_cast<std::size_t>(r)],
                       s.unseeded2()[static_cast<std::size_t>(projection[static_cast<std::size_t>(r)])]);
  out.matching = Matching(std::move(pairs));
  out.relaxed = std::move(p);
  return out;
}

} // namespace jofc
