#include "gvoys/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>

#include "gvoys/random.hpp"

namespace gvoys {

namespace {

std::size_t compute_max_degree(const std::vector<std::size_t>& offsets) {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets.size(); ++v)
    best = std::max(best, offsets[v + 1] - offsets[v]);
  return best;
}

void check_labels(std::span<const Label> labels, Label n_labels) {
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 1 || labels[v] > n_labels)
      throw GraphError("label " + std::to_string(labels[v]) + " of vertex " +
                       std::to_string(v) + " outside 1.." + std::to_string(n_labels));
  }
}

}  // namespace

Graph::Graph(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
             std::vector<Label> labels, Label n_labels) {
  if (n > std::numeric_limits<VertexId>::max())
    throw GraphError("vertex count exceeds 32-bit ids");
  if (labels.empty()) {
    labels.assign(n, 1);
    if (n_labels == 0) n_labels = 1;
  } else if (labels.size() != n) {
    throw GraphError("label array has " + std::to_string(labels.size()) +
                     " entries, expected " + std::to_string(n));
  }
  if (n_labels == 0)
    n_labels = labels.empty() ? 1 : *std::max_element(labels.begin(), labels.end());
  if (n_labels == 0) n_labels = 1;
  check_labels(labels, n_labels);

  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references a vertex outside 0.." + std::to_string(n) + "-1");
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  targets_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges) {
    targets_[cursor[u]++] = v;
    targets_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last)
      throw GraphError("duplicate edge (" + std::to_string(v) + "," + std::to_string(*dup) + ")");
  }
  labels_ = std::move(labels);
  n_labels_ = n_labels;
  max_degree_ = compute_max_degree(offsets_);
}

Graph Graph::from_csr(std::vector<std::size_t> offsets, std::vector<VertexId> targets,
                      std::vector<Label> labels, Label n_labels) {
  Graph g;
  g.max_degree_ = compute_max_degree(offsets);
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  g.labels_ = std::move(labels);
  g.n_labels_ = n_labels;
  return g;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edge_list() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < size(); ++u)
    for (VertexId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::with_labels(std::vector<Label> labels, Label n_labels) const {
  if (labels.size() != size()) throw GraphError("label array size mismatch");
  check_labels(labels, n_labels);
  Graph g = *this;
  g.labels_ = std::move(labels);
  g.n_labels_ = n_labels;
  return g;
}

MeasureVector factorized_measure(const Graph& g, MeasureKind kind) {
  const double value = kind == MeasureKind::uniform && g.size() > 0
                           ? 1.0 / static_cast<double>(g.size())
                           : 1.0;
  std::vector<double> entries(g.size(), value);
  return {entries, entries};
}

MeasureVector factorized_measure(const Graph& g, std::vector<double> v_weights,
                                 std::vector<double> w_weights) {
  for (const auto* weights : {&v_weights, &w_weights}) {
    if (weights->size() != g.size()) throw GraphError("measure length does not match vertex count");
    for (double x : *weights)
      if (!std::isfinite(x) || x < 0.0) throw GraphError("measure entries must be finite and nonnegative");
  }
  return {std::move(v_weights), std::move(w_weights)};
}

Graph parse_graph(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
    throw GraphError("graph record needs keys 'n' and 'edges'");
  const auto n_signed = doc.at("n").get<long long>();
  if (n_signed < 0) throw GraphError("negative vertex count");
  const auto n = static_cast<std::size_t>(n_signed);

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw GraphError("edge entries must be [u, v] pairs");
    const auto u = e[0].get<long long>();
    const auto v = e[1].get<long long>();
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }

  std::vector<Label> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc.at("labels")) {
      const auto value = l.get<long long>();
      if (value < 1) throw GraphError("labels are 1-based positive integers");
      labels.push_back(static_cast<Label>(value));
    }
  }
  Label n_labels = 0;
  if (doc.contains("n_labels")) {
    const auto value = doc.at("n_labels").get<long long>();
    if (value < 1) throw GraphError("n_labels must be positive");
    n_labels = static_cast<Label>(value);
  }
  return Graph(n, edges, std::move(labels), n_labels);
}

nlohmann::json serialize_graph(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edge_list()) edges.push_back({u, v});
  return {{"n", g.size()},
          {"edges", std::move(edges)},
          {"labels", std::vector<Label>(g.labels().begin(), g.labels().end())},
          {"n_labels", g.n_labels()}};
}

std::vector<Graph> parse_dataset(const nlohmann::json& doc) {
  if (!doc.is_array()) throw GraphError("dataset document must be an array of graphs");
  std::vector<Graph> out;
  out.reserve(doc.size());
  for (const auto& item : doc) out.push_back(parse_graph(item));
  return out;
}

nlohmann::json serialize_dataset(std::span<const Graph> graphs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : graphs) out.push_back(serialize_graph(g));
  return out;
}

std::vector<Graph> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open dataset " + path);
  return parse_dataset(nlohmann::json::parse(in));
}

void save_dataset(const std::string& path, std::span<const Graph> graphs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset " + path);
  out << serialize_dataset(graphs).dump() << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

// Pair index k enumerates the lower triangle row by row: (1,0), (2,0), (2,1), ...
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  if (p >= 1.0) {
    for (VertexId u = 1; u < n; ++u)
      for (VertexId v = 0; v < u; ++v) edges.emplace_back(u, v);
    return Graph(n, edges);
  }
  KeyedStream rng(seed);
  const double log_q = std::log1p(-p);
  std::uint64_t row = 1;
  std::int64_t col = -1;
  while (row < n) {
    const double u = rng.uniform();
    col += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
    while (row < n && col >= static_cast<std::int64_t>(row)) {
      col -= static_cast<std::int64_t>(row);
      ++row;
    }
    if (row < n) edges.emplace_back(static_cast<VertexId>(row), static_cast<VertexId>(col));
  }
  return Graph(n, edges);
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool require_connected) {
  if (n < 1) throw GraphError("erdos_renyi needs n >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw GraphError("edge probability must lie in (0, 1]");
  constexpr int kMaxAttempts = 1000;
  const int attempts = require_connected ? kMaxAttempts : 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Graph g = sample_gnp(n, p, key_hash({seed, static_cast<std::uint64_t>(attempt)}));
    if (!require_connected || is_connected(g)) return g;
  }
  throw GraphError("no connected G(" + std::to_string(n) + ", " + std::to_string(p) +
                   ") draw within " + std::to_string(kMaxAttempts) + " attempts");
}

Graph assign_random_labels(const Graph& g, Label n_labels, std::uint64_t seed) {
  if (n_labels < 1) throw GraphError("n_labels must be positive");
  KeyedStream rng(key_hash({seed, 0x6c6162656c73ULL}));
  std::vector<Label> labels(g.size());
  for (auto& l : labels) l = static_cast<Label>(1 + rng.index(n_labels));
  return g.with_labels(std::move(labels), n_labels);
}

bool is_connected(const Graph& g) {
  if (g.size() <= 1) return true;
  std::vector<char> seen(g.size(), 0);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop();
    for (VertexId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == g.size();
}

ProductSize product_size(const Graph& g1, const Graph& g2) {
  const Label labels = std::max(g1.n_labels(), g2.n_labels());
  const std::size_t L = static_cast<std::size_t>(labels) + 1;
  std::vector<std::uint64_t> count1(L, 0), count2(L, 0);
  for (Label l : g1.labels()) ++count1[l];
  for (Label l : g2.labels()) ++count2[l];
  // Directed label-pair edge counts; each undirected product edge appears
  // twice in the sum over both orientations of both factors' edges.
  std::vector<std::uint64_t> pairs1(L * L, 0), pairs2(L * L, 0);
  for (VertexId u = 0; u < g1.size(); ++u)
    for (VertexId v : g1.neighbors(u)) ++pairs1[g1.label(u) * L + g1.label(v)];
  for (VertexId u = 0; u < g2.size(); ++u)
    for (VertexId v : g2.neighbors(u)) ++pairs2[g2.label(u) * L + g2.label(v)];
  ProductSize out;
  for (std::size_t l = 1; l < L; ++l) out.vertices += count1[l] * count2[l];
  std::uint64_t directed = 0;
  for (std::size_t k = 0; k < L * L; ++k) directed += pairs1[k] * pairs2[k];
  out.edges = directed / 2;
  return out;
}

ProductGraph direct_product(const Graph& g1, const Graph& g2) {
  const std::size_t n2 = g2.size();
  constexpr VertexId kAbsent = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> index(g1.size() * n2, kAbsent);
  ProductGraph out;
  std::vector<Label> labels;
  for (VertexId u = 0; u < g1.size(); ++u) {
    for (VertexId v = 0; v < n2; ++v) {
      if (g1.label(u) != g2.label(v)) continue;
      index[u * n2 + v] = static_cast<VertexId>(out.pairs.size());
      out.pairs.emplace_back(u, v);
      labels.push_back(g1.label(u));
    }
  }
  std::vector<std::size_t> offsets{0};
  offsets.reserve(out.pairs.size() + 1);
  std::vector<VertexId> targets;
  for (auto [u, v] : out.pairs) {
    // Row-major pair order makes each row come out sorted.
    for (VertexId a : g1.neighbors(u))
      for (VertexId b : g2.neighbors(v))
        if (auto id = index[a * n2 + b]; id != kAbsent) targets.push_back(id);
    offsets.push_back(targets.size());
  }
  out.graph = Graph::from_csr(std::move(offsets), std::move(targets), std::move(labels),
                              std::max(g1.n_labels(), g2.n_labels()));
  return out;
}

std::vector<double> product_measure(const ProductGraph& pg, std::span<const double> a,
                                    std::span<const double> b) {
  std::vector<double> out(pg.pairs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[pg.pairs[i].first] * b[pg.pairs[i].second];
  return out;
}

}  // namespace gvoys
