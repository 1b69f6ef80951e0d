#include "jofc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace jofc {

Graph::Graph(Eigen::MatrixXd weights, bool directed, bool loopy)
    : weights_(std::move(weights)), directed_(directed), loopy_(loopy)
{
  if (weights_.rows() != weights_.cols())
    throw Error("graph: adjacency matrix must be square");
  const Index n = size();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0)
        throw Error("graph: weights must be finite and nonnegative");
      if (!directed_ && w != weights_(j, i))
        throw Error("graph: undirected adjacency matrix is not symmetric");
    }
  if (!loopy_ && (weights_.diagonal().array() != 0.0).any())
    throw Error("graph: self-loop in a graph declared loop-free");
}

bool Graph::unweighted() const
{
  return ((weights_.array() == 0.0) || (weights_.array() == 1.0)).all();
}

Index Graph::edge_count() const
{
  const Index nonzero = (weights_.array() != 0.0).count();
  if (directed_) return nonzero;
  const Index loops = (weights_.diagonal().array() != 0.0).count();
  return (nonzero - loops) / 2 + loops;
}

Graph Graph::binarized() const
{
  return Graph((weights_.array() != 0.0).cast<double>().matrix(), directed_,
               loopy_);
}

Graph Graph::symmetrized() const
{
  return Graph(weights_.cwiseMax(weights_.transpose()), false, loopy_);
}

Graph Graph::induced(const std::vector<Index>& vertices) const
{
  const Index k = static_cast<Index>(vertices.size());
  Eigen::MatrixXd sub(k, k);
  for (Index b = 0; b < k; ++b)
    for (Index a = 0; a < k; ++a)
      sub(a, b) = weights_(vertices[static_cast<std::size_t>(a)],
                           vertices[static_cast<std::size_t>(b)]);
  return Graph(std::move(sub), directed_, loopy_);
}

Graph Graph::relabeled(const std::vector<Index>& new_label) const
{
  const Index n = size();
  if (static_cast<Index>(new_label.size()) != n)
    throw Error("graph: relabeling has wrong length");
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(n, n, -1.0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      out(new_label[static_cast<std::size_t>(i)],
          new_label[static_cast<std::size_t>(j)]) = weights_(i, j);
  if ((out.array() < 0.0).any()) throw Error("graph: relabeling is not a permutation");
  return Graph(std::move(out), directed_, loopy_);
}

std::vector<std::vector<Index>> connected_components(const Graph& g)
{
  const Index n = g.size();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> components;
  for (Index start = 0; start < n; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) continue;
    const Index id = static_cast<Index>(components.size());
    std::vector<Index> members{start};
    label[static_cast<std::size_t>(start)] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const Index u = members[head];
      for (Index v = 0; v < n; ++v)
        if (label[static_cast<std::size_t>(v)] < 0 &&
            (g.has_edge(u, v) || g.has_edge(v, u))) {
          label[static_cast<std::size_t>(v)] = id;
          members.push_back(v);
        }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

std::vector<Index> sample_connected_vertices(const Graph& g, Index size, Rng& rng)
{
  if (size < 1) throw Error("sample_connected_vertices: size must be >= 1");
  std::vector<Index> starts;
  for (const auto& component : connected_components(g))
    if (static_cast<Index>(component.size()) >= size)
      starts.insert(starts.end(), component.begin(), component.end());
  if (starts.empty())
    throw Error("sample_connected_vertices: no connected component has " + std::to_string(size) + " vertices");
  std::sort(starts.begin(), starts.end());
  std::uniform_int_distribution<std::size_t> pick(0, starts.size() - 1);

  const Index n = g.size();
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::vector<Index> chosen{starts[pick(rng)]};
  taken[static_cast<std::size_t>(chosen.front())] = 1;
  for (std::size_t head = 0; head < chosen.size() && static_cast<Index>(chosen.size()) < size; ++head) {
    const Index u = chosen[head];
    std::vector<Index> fresh;
    for (Index v = 0; v < n; ++v)
      if (!taken[static_cast<std::size_t>(v)] && (g.has_edge(u, v) || g.has_edge(v, u))) fresh.push_back(v);
    std::shuffle(fresh.begin(), fresh.end(), rng);
    for (Index v : fresh) {
      if (static_cast<Index>(chosen.size()) == size) break;
      taken[static_cast<std::size_t>(v)] = 1;
      chosen.push_back(v);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Graph read_edge_list(std::istream& in, bool directed, bool loopy)
{
  struct Edge {
    Index u, v;
    double w;
  };
  std::vector<Edge> edges;
  std::set<std::pair<Index, Index>> seen;
  Index n = 0;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error("edge list line " + std::to_string(lineno) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream header(line.substr(first + 1));
      std::string key;
      long long count = 0;
      if (header >> key && key == "vertices" && header >> count) {
        if (count < 0) throw fail("negative vertex count");
        n = std::max(n, static_cast<Index>(count));
      }
      continue;
    }
    std::istringstream fields(line);
    long long u = 0, v = 0;
    double w = 1.0;
    if (!(fields >> u >> v)) throw fail("expected 'u v [w]'");
    if (!(fields >> w)) {
      if (!fields.eof()) throw fail("unparseable weight");
      w = 1.0;
    } else {
      std::string rest;
      if (fields >> rest) throw fail("trailing fields");
    }
    if (u < 1 || v < 1) throw fail("vertex ids are 1-based");
    if (!std::isfinite(w) || w < 0.0) throw fail("negative or non-finite weight");
    if (u == v && !loopy) throw fail("self-loop in a loop-free graph");
    const Index a = static_cast<Index>(u - 1), b = static_cast<Index>(v - 1);
    const auto key = directed ? std::pair{a, b} : std::pair{std::min(a, b), std::max(a, b)};
    if (!seen.insert(key).second)
      throw fail("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.push_back({a, b, w});
    n = std::max({n, a + 1, b + 1});
  }

  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : edges) {
    weights(e.u, e.v) = e.w;
    if (!directed) weights(e.v, e.u) = e.w;
  }
  return Graph(std::move(weights), directed, loopy);
}

Graph load_edge_list(const std::filesystem::path& path, bool directed, bool loopy)
{
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_edge_list(in, directed, loopy);
}

void write_edge_list(const Graph& g, std::ostream& out)
{
  out << "# vertices " << g.size() << '\n';
  char buf[64];
  for (Index i = 0; i < g.size(); ++i)
    for (Index j = g.directed() ? 0 : i; j < g.size(); ++j) {
      if (!g.has_edge(i, j)) continue;
      std::snprintf(buf, sizeof buf, "%.17g", g.weight(i, j));
      out << i + 1 << ' ' << j + 1 << ' ' << buf << '\n';
    }
}

void save_edge_list(const Graph& g, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_edge_list(g, out);
}

Graph sample_er(Index n, double p, Rng& rng)
{
  if (!(p > 0.0 && p < 1.0)) throw Error("sample_er: p must lie in (0, 1)");
  if (n < 0) throw Error("sample_er: negative vertex count");
  std::bernoulli_distribution coin(p);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (coin(rng)) a(i, j) = a(j, i) = 1.0;
  return Graph(std::move(a));
}

Graph sample_er(Index n, double p, std::uint64_t rng_seed)
{
  Rng rng = make_stream(rng_seed);
  return sample_er(n, p, rng);
}

Graph bit_flip(const Graph& g, double rho, Rng& rng)
{
  if (!(rho >= 0.0 && rho <= 0.5)) throw Error("bit_flip: rho must lie in [0, 0.5]");
  if (g.directed() || !g.unweighted() || (g.weights().diagonal().array() != 0.0).any())
    throw Error("bit_flip: graph must be simple, undirected and unweighted");
  std::bernoulli_distribution flip(rho);
  Eigen::MatrixXd a = g.weights();
  for (Index i = 0; i < g.size(); ++i)
    for (Index j = i + 1; j < g.size(); ++j)
      if (flip(rng)) a(i, j) = a(j, i) = 1.0 - a(i, j);
  return Graph(std::move(a), false, g.loopy());
}

Graph bit_flip(const Graph& g, double rho, std::uint64_t rng_seed)
{
  Rng rng = make_stream(rng_seed);
  return bit_flip(g, rho, rng);
}

std::pair<Graph, Graph> sample_bit_flip_pair(const BitFlipParams& params)
{
  Rng rng = make_stream(params.rng_seed);
  Graph g1 = sample_er(params.n, params.p, rng);
  Graph g2 = bit_flip(g1, params.rho, rng);
  return {std::move(g1), std::move(g2)};
}

CloneResult clone_vertices(const Graph& g, const CloneParams& params, Rng& rng)
{
  if (!(params.clone_success_prob > 0.0 && params.clone_success_prob < 1.0))
    throw Error("clone_vertices: clone_success_prob must lie in (0, 1)");
  if (params.max_clones < 1) throw Error("clone_vertices: max_clones must be >= 1");
  if (g.directed()) throw Error("clone_vertices: graph must be undirected");

  const Index n = g.size();
  std::geometric_distribution<int> failures(params.clone_success_prob);
  std::vector<Index> origin(static_cast<std::size_t>(n));
  std::iota(origin.begin(), origin.end(), Index{0});
  for (Index i = 0; i < n; ++i) {
    const int copies = std::min(1 + failures(rng), params.max_clones);
    for (int c = 1; c < copies; ++c) origin.push_back(i);
  }

  // W' = E W E^T with E the copy -> original indicator.
  const Index total = static_cast<Index>(origin.size());
  Eigen::MatrixXd expand = Eigen::MatrixXd::Zero(total, n);
  std::vector<VertexPair> truth;
  truth.reserve(origin.size());
  for (Index v = 0; v < total; ++v) {
    expand(v, origin[static_cast<std::size_t>(v)]) = 1.0;
    truth.emplace_back(origin[static_cast<std::size_t>(v)], v);
  }
  Eigen::MatrixXd weights = expand * g.weights() * expand.transpose();

  return {Graph(std::move(weights), false, g.loopy()), Matching(std::move(truth)),
          std::move(origin)};
}

CloneResult clone_vertices(const Graph& g, const CloneParams& params)
{
  Rng rng = make_stream(params.rng_seed);
  return clone_vertices(g, params, rng);
}

} // namespace jofc
