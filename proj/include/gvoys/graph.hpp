#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gvoys {

using VertexId = std::uint32_t;
using Label = std::uint32_t;

/// Raised for malformed graph records and invalid generator arguments.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted and symmetric, there are no self-loops or
/// duplicate entries, and every label lies in 1..n_labels. Unlabelled graphs
/// carry n_labels == 1 with all labels equal to 1.
class Graph {
 public:
  Graph() = default;

  /// Validating constructor. Throws GraphError on out-of-range endpoints,
  /// self-loops, duplicate edges or labels outside 1..n_labels. An empty
  /// `labels` vector means "unlabelled".
  Graph(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
        std::vector<Label> labels = {}, Label n_labels = 0);

  /// Unchecked construction from already-canonical CSR arrays.
  static Graph from_csr(std::vector<std::size_t> offsets,
                        std::vector<VertexId> targets, std::vector<Label> labels,
                        Label n_labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], degree(v)};
  }
  Label label(VertexId v) const { return labels_[v]; }
  std::span<const Label> labels() const { return labels_; }
  Label n_labels() const { return n_labels_; }

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const VertexId> targets() const { return targets_; }

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<std::pair<VertexId, VertexId>> edge_list() const;

  /// Copy of this graph with new vertex labels.
  Graph with_labels(std::vector<Label> labels, Label n_labels) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<Label> labels_;
  Label n_labels_ = 1;
  std::size_t max_degree_ = 0;
};

/// Per-graph factors of the start and stop measures. The product-graph
/// measures are the Kronecker products of these restricted to label-matching
/// vertex pairs.
struct MeasureVector {
  std::vector<double> v_factor;
  std::vector<double> w_factor;
};

enum class MeasureKind { uniform, ones };

MeasureVector factorized_measure(const Graph& g, MeasureKind kind);
/// Custom weights, used for both factors. Throws GraphError on a negative,
/// non-finite or wrongly sized entry.
MeasureVector factorized_measure(const Graph& g, std::vector<double> v_weights,
                                 std::vector<double> w_weights);

// Structured documents: {"n":..., "edges":[[u,v],...], "labels":[...], "n_labels":...}
Graph parse_graph(const nlohmann::json& doc);
nlohmann::json serialize_graph(const Graph& g);
std::vector<Graph> parse_dataset(const nlohmann::json& doc);
nlohmann::json serialize_dataset(std::span<const Graph> graphs);
std::vector<Graph> load_dataset(const std::string& path);
void save_dataset(const std::string& path, std::span<const Graph> graphs);

/// G(n, p) with every unordered pair an edge independently with probability
/// p. With `require_connected`, resamples up to 1000 times and throws
/// GraphError if no connected draw was found.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                  bool require_connected = false);

/// Labels drawn uniformly from 1..n_labels.
Graph assign_random_labels(const Graph& g, Label n_labels, std::uint64_t seed);

bool is_connected(const Graph& g);

/// Direct product on label-matching vertex pairs, with the map from product
/// vertex index back to the factor pair.
struct ProductGraph {
  Graph graph;
  std::vector<std::pair<VertexId, VertexId>> pairs;
};

/// Vertex and undirected edge counts of the direct product, computed without
/// materializing it.
struct ProductSize {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

ProductSize product_size(const Graph& g1, const Graph& g2);
ProductGraph direct_product(const Graph& g1, const Graph& g2);

/// Product-graph measure restricted to product vertices: out[i] = a[u] * b[v]
/// for pairs[i] == (u, v).
std::vector<double> product_measure(const ProductGraph& pg, std::span<const double> a,
                                    std::span<const double> b);

}  // namespace gvoys
