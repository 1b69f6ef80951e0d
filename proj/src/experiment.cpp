#include "jofc/experiment.hpp"

#include "jofc/parallel.hpp"
#include "jofc/random.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace jofc {

Algorithm parse_algorithm(std::string_view name)
{
  if (name == "sgm") return Algorithm::sgm;
  if (name == "jofc_sp") return Algorithm::jofc_sp;
  if (name == "jofc_dice") return Algorithm::jofc_dice;
  if (name == "chance") return Algorithm::chance;
  throw Error("unknown algorithm '" + std::string(name) + "' (sgm, jofc_sp, jofc_dice, chance)");
}

std::string to_string(Algorithm algorithm)
{
  switch (algorithm) {
  case Algorithm::sgm: return "sgm";
  case Algorithm::jofc_sp: return "jofc_sp";
  case Algorithm::jofc_dice: return "jofc_dice";
  case Algorithm::chance: return "chance";
  }
  return "?";
}

namespace {

std::string format_number(double v)
{
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string format_number(long long v) { return std::to_string(v); }

std::string trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& text, const std::string& what)
{
  T value{};
  const auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size())
    throw Error(what + ": cannot parse '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text, const std::string& what)
{
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw Error(what + ": expected a boolean, got '" + text + "'");
}

template <typename T>
std::string join(const std::vector<T>& values)
{
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    if constexpr (std::is_same_v<T, Algorithm>)
      out += to_string(values[k]);
    else if constexpr (std::is_floating_point_v<T>)
      out += format_number(static_cast<double>(values[k]));
    else
      out += format_number(static_cast<long long>(values[k]));
  }
  return out;
}

} // namespace

void ExperimentConfig::validate() const
{
  if (n < 2) throw Error("config: n must be >= 2");
  if (!(p > 0.0 && p < 1.0)) throw Error("config: p must lie in (0, 1)");
  if (m_grid.empty() || rho_grid.empty() || algorithms.empty())
    throw Error("config: m, rho and algorithms must be nonempty");
  for (Index m : m_grid)
    if (m < 0 || m >= n) throw Error("config: every m must lie in [0, n)");
  for (double rho : rho_grid)
    if (!(rho >= 0.0 && rho <= 0.5)) throw Error("config: every rho must lie in [0, 0.5]");
  if (replicates < 2) throw Error("config: replicates must be >= 2 for a standard error");
  if (!(clone.clone_success_prob > 0.0 && clone.clone_success_prob < 1.0))
    throw Error("config: clone_success_prob must lie in (0, 1)");
  if (clone.max_clones < 1) throw Error("config: max_clones must be >= 1");
  if (sgm.max_iters < 0) throw Error("config: sgm_max_iters must be >= 0");
  pipeline.validate();
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const
{
  const auto& sm = pipeline.smacof;
  return {
      {"n", format_number(static_cast<long long>(n))},
      {"p", format_number(p)},
      {"m", join(m_grid)},
      {"rho", join(rho_grid)},
      {"replicates", format_number(static_cast<long long>(replicates))},
      {"algorithms", join(algorithms)},
      {"dim", pipeline.dim ? format_number(static_cast<long long>(*pipeline.dim)) : "auto"},
      {"alpha", format_number(pipeline.alpha)},
      {"max_dim", format_number(static_cast<long long>(pipeline.max_dim))},
      {"unseeded_dim", format_number(static_cast<long long>(pipeline.unseeded_dim))},
      {"w", format_number(sm.w)},
      {"max_iters", format_number(static_cast<long long>(sm.max_iters))},
      {"rel_stress_tol", format_number(sm.rel_stress_tol)},
      {"n_restarts", format_number(static_cast<long long>(sm.n_restarts))},
      {"matcher", to_string(pipeline.matcher)},
      {"gap_attach", pipeline.gap.attach == GapOptions::Attach::all ? "all" : "below_mean"},
      {"sgm_max_iters", format_number(static_cast<long long>(sgm.max_iters))},
      {"sgm_step_tol", format_number(sgm.step_tol)},
      {"clone_success_prob", format_number(clone.clone_success_prob)},
      {"max_clones", format_number(static_cast<long long>(clone.max_clones))},
      {"rng_seed", std::to_string(rng_seed)},
  };
}

ExperimentConfig parse_experiment_config(std::istream& in)
{
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string::npos) throw Error(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const std::string what = where + " (" + key + ")";
    auto as_int = [&] { return parse_number<long long>(value, what); };
    auto as_double = [&] { return parse_number<double>(value, what); };
    auto& sm = cfg.pipeline.smacof;

    if (key == "n") cfg.n = as_int();
    else if (key == "p") cfg.p = as_double();
    else if (key == "m") {
      cfg.m_grid.clear();
      for (const auto& item : split(value, ',')) cfg.m_grid.push_back(parse_number<long long>(item, what));
    } else if (key == "rho") {
      cfg.rho_grid.clear();
      for (const auto& item : split(value, ',')) cfg.rho_grid.push_back(parse_number<double>(item, what));
    } else if (key == "replicates") cfg.replicates = static_cast<int>(as_int());
    else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& item : split(value, ',')) cfg.algorithms.push_back(parse_algorithm(item));
    } else if (key == "dim") {
      if (value == "auto") cfg.pipeline.dim.reset();
      else cfg.pipeline.dim = as_int();
    } else if (key == "alpha") cfg.pipeline.alpha = as_double();
    else if (key == "max_dim") cfg.pipeline.max_dim = as_int();
    else if (key == "unseeded_dim") cfg.pipeline.unseeded_dim = as_int();
    else if (key == "w") sm.w = as_double();
    else if (key == "max_iters") sm.max_iters = static_cast<int>(as_int());
    else if (key == "rel_stress_tol") sm.rel_stress_tol = as_double();
    else if (key == "n_restarts") sm.n_restarts = static_cast<int>(as_int());
    else if (key == "matcher") cfg.pipeline.matcher = parse_matcher(value);
    else if (key == "gap_attach") {
      if (value == "all") cfg.pipeline.gap.attach = GapOptions::Attach::all;
      else if (value == "below_mean") cfg.pipeline.gap.attach = GapOptions::Attach::below_mean;
      else throw Error(what + ": expected all or below_mean");
    } else if (key == "sgm_max_iters") cfg.sgm.max_iters = static_cast<int>(as_int());
    else if (key == "sgm_step_tol") cfg.sgm.step_tol = as_double();
    else if (key == "clone_success_prob") cfg.clone.clone_success_prob = as_double();
    else if (key == "max_clones") cfg.clone.max_clones = static_cast<int>(as_int());
    else if (key == "rng_seed") cfg.rng_seed = parse_number<std::uint64_t>(value, what);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(as_int());
    else throw Error(where + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  return parse_experiment_config(in);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Sample {
  Graph g1, g2;
  Matching truth;
  Seeding seeding;
  std::uint64_t jofc_seed = 0;
};

std::vector<Index> iota(Index n)
{
  std::vector<Index> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

/// Relabels g by a uniform permutation and returns it with the permutation.
std::pair<Graph, std::vector<Index>> shuffle_labels(const Graph& g, Rng& rng)
{
  std::vector<Index> perm = iota(g.size());
  std::shuffle(perm.begin(), perm.end(), rng);
  return {g.relabeled(perm), std::move(perm)};
}

std::vector<Index> choose_seeds(Index n, Index m, Rng& rng)
{
  std::vector<Index> order = iota(n);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(m));
  std::sort(order.begin(), order.end());
  return order;
}

Sample bitflip_sample(const ExperimentConfig& cfg, Index m, double rho, Rng& rng)
{
  Sample out;
  out.g1 = sample_er(cfg.n, cfg.p, rng);
  auto [g2, perm] = shuffle_labels(bit_flip(out.g1, rho, rng), rng);
  out.g2 = std::move(g2);
  std::vector<VertexPair> truth, seeds;
  for (Index i = 0; i < cfg.n; ++i) truth.emplace_back(i, perm[static_cast<std::size_t>(i)]);
  for (Index i : choose_seeds(cfg.n, m, rng)) seeds.emplace_back(i, perm[static_cast<std::size_t>(i)]);
  out.truth = Matching(std::move(truth));
  out.seeding = Seeding(cfg.n, cfg.n, Matching(std::move(seeds)));
  out.jofc_seed = rng();
  return out;
}

Sample clone_sample(const ExperimentConfig& cfg, Index m, double rho, Rng& rng)
{
  Sample out;
  out.g1 = sample_er(cfg.n, cfg.p, rng);
  const CloneResult cloned = clone_vertices(out.g1, cfg.clone, rng);
  auto [g2, perm] = shuffle_labels(bit_flip(cloned.graph, rho, rng), rng);
  out.g2 = std::move(g2);
  const std::vector<Index> chosen = choose_seeds(cfg.n, m, rng);
  std::vector<VertexPair> truth, seeds;
  for (auto [i, c] : cloned.truth.pairs()) {
    const VertexPair pair{i, perm[static_cast<std::size_t>(c)]};
    truth.push_back(pair);
    if (std::binary_search(chosen.begin(), chosen.end(), i)) seeds.push_back(pair);
  }
  out.truth = Matching(std::move(truth));
  out.seeding = Seeding(out.g1.size(), out.g2.size(), Matching(std::move(seeds)));
  out.jofc_seed = rng();
  return out;
}

Matching chance_match(const Seeding& s, bool many_to_one, const GapOptions& gap, Rng& rng)
{
  const auto& u1 = s.unseeded1();
  const auto& u2 = s.unseeded2();
  std::vector<VertexPair> pairs;
  if (!many_to_one) {
    std::vector<Index> targets = u2;
    std::shuffle(targets.begin(), targets.end(), rng);
    for (std::size_t k = 0; k < std::min(u1.size(), targets.size()); ++k) pairs.emplace_back(u1[k], targets[k]);
    return Matching(std::move(pairs));
  }
  if (u1.empty() || u2.empty()) return {};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CostMatrix cost(s.u1(), s.u2());
  for (Index b = 0; b < cost.cols(); ++b)
    for (Index a = 0; a < cost.rows(); ++a) cost(a, b) = unit(rng);
  const Matching local = gap_match(cost, gap);
  for (auto [a, b] : local.pairs())
    pairs.emplace_back(u1[static_cast<std::size_t>(a)], u2[static_cast<std::size_t>(b)]);
  return Matching(std::move(pairs));
}

bool covers_unseeded1(const Matching& est, const Seeding& s)
{
  const auto forward = est.forward(s.n1());
  return std::all_of(s.unseeded1().begin(), s.unseeded1().end(),
                     [&](Index i) { return !forward[static_cast<std::size_t>(i)].empty(); });
}

std::vector<ReplicateRecord> run_replicate(const ExperimentConfig& cfg, bool clone, std::size_t cell, int rep,
                                           Index m, double rho)
{
  Rng rng = make_stream(cfg.rng_seed, cell, rep);
  const Sample sample = clone ? clone_sample(cfg, m, rho, rng) : bitflip_sample(cfg, m, rho, rng);
  const Seeding& s = sample.seeding;

  std::vector<ReplicateRecord> out;
  for (Algorithm algorithm : cfg.algorithms) {
    ReplicateRecord rec;
    rec.m = m;
    rec.rho = rho;
    rec.algorithm = algorithm;
    rec.replicate = rep;
    const auto start = Clock::now();
    Matching est;
    switch (algorithm) {
    case Algorithm::sgm:
      est = sgm(sample.g1, sample.g2, s, cfg.sgm).matching;
      break;
    case Algorithm::jofc_sp:
    case Algorithm::jofc_dice: {
      PipelineConfig pc = cfg.pipeline;
      pc.dissimilarity =
          algorithm == Algorithm::jofc_sp ? DissimilarityKind::shortest_path : DissimilarityKind::weighted_dice;
      pc.smacof.rng_seed = sample.jofc_seed;
      if (clone) pc.matcher = MatcherKind::gap;
      JofcResult r = jofc_match(sample.g1, sample.g2, s, pc);
      est = std::move(r.matching);
      rec.dim = r.dim;
      rec.timings = r.timings;
      break;
    }
    case Algorithm::chance: {
      Rng chance_rng = make_stream(cfg.rng_seed, cell, rep, 1);
      est = chance_match(s, clone, cfg.pipeline.gap, chance_rng);
      break;
    }
    }
    rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const MatchEvaluation eval = evaluate_match(est, sample.truth, s);
    rec.ratio = clone ? eval.ratio2 : eval.ratio;
    rec.covered = covers_unseeded1(est, s);
    out.push_back(rec);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool clone)
{
  cfg.validate();
  if (clone && std::find(cfg.algorithms.begin(), cfg.algorithms.end(), Algorithm::sgm) != cfg.algorithms.end())
    throw Error("clone experiment: sgm needs graphs of equal size");
  const std::size_t cells = cfg.m_grid.size() * cfg.rho_grid.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
  std::vector<std::vector<ReplicateRecord>> slots(cells * reps);
  parallel_for(slots.size(), cfg.threads, [&](std::size_t job) {
    const std::size_t cell = job / reps;
    const int rep = static_cast<int>(job % reps);
    const Index m = cfg.m_grid[cell / cfg.rho_grid.size()];
    const double rho = cfg.rho_grid[cell % cfg.rho_grid.size()];
    try {
      slots[job] = run_replicate(cfg, clone, cell, rep, m, rho);
    } catch (const std::exception& e) {
      throw Error("m = " + std::to_string(m) + ", rho = " + format_number(rho) + ", replicate " +
                  std::to_string(rep) + ": " + e.what());
    }
  });

  ExperimentResult result;
  result.kind = clone ? "clone" : "bitflip";
  for (auto& slot : slots)
    for (auto& rec : slot) result.replicates.push_back(rec);
  result.aggregates = aggregate(result.replicates);
  return result;
}

void write_provenance(const std::string& kind, const ExperimentConfig& cfg, std::ostream& out)
{
  out << "# experiment = " << kind << '\n';
  for (const auto& [key, value] : cfg.entries()) out << "# " << key << " = " << value << '\n';
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in, const std::string& expected_header)
{
  std::string line;
  bool header = false;
  std::vector<std::vector<std::string>> rows;
  const std::size_t columns = split(expected_header, ',').size();
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (trim(line) != expected_header) throw Error("csv: expected header '" + expected_header + "'");
      header = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != columns) throw Error("csv: wrong number of fields in '" + line + "'");
    rows.push_back(std::move(fields));
  }
  if (!header) throw Error("csv: missing header '" + expected_header + "'");
  return rows;
}

constexpr const char* replicate_header = "m,rho,algorithm,replicate,ratio,dim,covered";
constexpr const char* aggregate_header = "m,rho,algorithm,mean_Rm,se_Rm,n_reps";

} // namespace

ExperimentResult run_bitflip_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, false); }

ExperimentResult run_clone_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, true); }

std::vector<AggregateRecord> aggregate(const std::vector<ReplicateRecord>& records)
{
  std::vector<AggregateRecord> out;
  std::vector<std::vector<double>> values;
  for (const auto& rec : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AggregateRecord& a) {
      return a.m == rec.m && a.rho == rec.rho && a.algorithm == rec.algorithm;
    });
    if (it == out.end()) {
      out.push_back({rec.m, rec.rho, rec.algorithm, 0.0, 0.0, 0});
      values.emplace_back();
      it = out.end() - 1;
    }
    values[static_cast<std::size_t>(it - out.begin())].push_back(rec.ratio);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    const auto& v = values[g];
    const double k = static_cast<double>(v.size());
    if (v.size() < 2) throw Error("aggregate: a standard error needs at least two replicates");
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= k;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out[g].mean_ratio = mean;
    out[g].se_ratio = std::sqrt(ss / (k - 1.0) / k);
    out[g].n_reps = static_cast<int>(v.size());
  }
  return out;
}

void write_replicates_csv(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out)
{
  write_provenance(result.kind, cfg, out);
  out << replicate_header << '\n';
  for (const auto& r : result.replicates)
    out << r.m << ',' << format_number(r.rho) << ',' << to_string(r.algorithm) << ',' << r.replicate << ','
        << format_number(r.ratio) << ',' << r.dim << ',' << (r.covered ? 1 : 0) << '\n';
}

void write_aggregate_csv(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out)
{
  write_provenance(result.kind, cfg, out);
  out << aggregate_header << '\n';
  for (const auto& a : result.aggregates)
    out << a.m << ',' << format_number(a.rho) << ',' << to_string(a.algorithm) << ','
        << format_number(a.mean_ratio) << ',' << format_number(a.se_ratio) << ',' << a.n_reps << '\n';
}

void write_timings_csv(const ExperimentResult& result, std::ostream& out)
{
  out << "m,rho,algorithm,replicate,dissimilarity,omnibus,dimension,embed,oos,assign,seconds\n";
  for (const auto& r : result.replicates) {
    const auto& t = r.timings;
    out << r.m << ',' << format_number(r.rho) << ',' << to_string(r.algorithm) << ',' << r.replicate;
    for (double v : {t.dissimilarity, t.omnibus, t.dimension, t.embed, t.oos, t.assign, r.seconds})
      out << ',' << format_number(v);
    out << '\n';
  }
}

std::vector<ReplicateRecord> read_replicates_csv(std::istream& in)
{
  std::vector<ReplicateRecord> out;
  for (const auto& f : read_csv_rows(in, replicate_header)) {
    ReplicateRecord r;
    r.m = parse_number<long long>(f[0], "m");
    r.rho = parse_number<double>(f[1], "rho");
    r.algorithm = parse_algorithm(f[2]);
    r.replicate = parse_number<int>(f[3], "replicate");
    r.ratio = parse_number<double>(f[4], "ratio");
    r.dim = parse_number<long long>(f[5], "dim");
    r.covered = parse_bool(f[6], "covered");
    out.push_back(r);
  }
  return out;
}

std::vector<AggregateRecord> read_aggregate_csv(std::istream& in)
{
  std::vector<AggregateRecord> out;
  for (const auto& f : read_csv_rows(in, aggregate_header)) {
    AggregateRecord a;
    a.m = parse_number<long long>(f[0], "m");
    a.rho = parse_number<double>(f[1], "rho");
    a.algorithm = parse_algorithm(f[2]);
    a.mean_ratio = parse_number<double>(f[3], "mean_Rm");
    a.se_ratio = parse_number<double>(f[4], "se_Rm");
    a.n_reps = parse_number<int>(f[5], "n_reps");
    out.push_back(a);
  }
  return out;
}

void check_aggregates(const std::vector<ReplicateRecord>& replicates,
                      const std::vector<AggregateRecord>& aggregates, double rel_tol)
{
  const auto expected = aggregate(replicates);
  if (expected.size() != aggregates.size())
    throw Error("aggregates: " + std::to_string(aggregates.size()) + " rows, replicates give " +
                std::to_string(expected.size()));
  auto close = [rel_tol](double a, double b) { return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b)); };
  for (std::size_t g = 0; g < expected.size(); ++g) {
    const auto& e = expected[g];
    const auto& a = aggregates[g];
    if (e.m != a.m || e.rho != a.rho || e.algorithm != a.algorithm || e.n_reps != a.n_reps ||
        !close(e.mean_ratio, a.mean_ratio) || !close(e.se_ratio, a.se_ratio))
      throw Error("aggregates: row " + std::to_string(g + 1) + " (m = " + std::to_string(a.m) + ", rho = " +
                  format_number(a.rho) + ", " + to_string(a.algorithm) + ") disagrees with the replicates");
  }
}

ExperimentResult load_experiment(const std::filesystem::path& replicates_csv,
                                 const std::filesystem::path& aggregate_csv)
{
  std::ifstream rin(replicates_csv), ain(aggregate_csv);
  if (!rin) throw Error("cannot open " + replicates_csv.string());
  if (!ain) throw Error("cannot open " + aggregate_csv.string());
  ExperimentResult result;
  result.replicates = read_replicates_csv(rin);
  result.aggregates = read_aggregate_csv(ain);
  check_aggregates(result.replicates, result.aggregates);
  std::string line;
  std::ifstream again(replicates_csv);
  if (std::getline(again, line) && line.rfind("# experiment = ", 0) == 0) result.kind = line.substr(15);
  return result;
}

} // namespace jofc
