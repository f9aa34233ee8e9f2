#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gvoys/coeffs.hpp"
#include "gvoys/graph.hpp"
#include "gvoys/tape.hpp"

namespace gvoys {

/// Embeddings or feature matrices built from different tape families were
/// combined.
class ProvenanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cooperative wall-clock limit, checked between units of work.
class TimeBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

enum class Storage { dense, sparse };

struct WalkConfig {
  std::uint32_t walks = 100;           // m, walkers per start vertex
  double p_halt = 0.2;
  std::optional<std::size_t> anchors;  // r; empty means every vertex
  std::uint32_t d_g = 1;               // embedding dimension, one block per coordinate
  std::optional<int> truncation;       // must match the scheme when set
  Storage storage = Storage::dense;
  GDistribution g_distribution = GDistribution::rademacher;
  SharingMode sharing = SharingMode::per_walker;

  /// Throws ConfigError on m == 0, p_halt outside (0, 1), r == 0 or d_G == 0.
  void validate() const;
  void check_scheme(const CoefficientScheme& scheme) const;
  /// Anchor count actually used on a graph with n vertices (r clamped to n).
  std::size_t anchors_for(std::size_t n) const;
};

/// Seeds of one tape family. Signs (g, z) and walks (t, hops, anchors) can
/// be varied independently.
struct TapeSeeds {
  std::uint64_t sign_seed;
  std::uint64_t walk_seed;

  static TapeSeeds from_master(std::uint64_t master) { return {master, master}; }
  bool operator==(const TapeSeeds&) const = default;
};

/// r distinct vertices drawn uniformly without replacement, in draw order.
/// With no count, all vertices in index order.
std::vector<VertexId> sample_anchors(std::size_t n, std::optional<std::size_t> count,
                                     std::uint64_t seed);

/// Seed for the anchor draw of graph `stream` in block `block`. The C and D
/// matrices of a block share it.
std::uint64_t anchor_seed(const TapeSeeds& seeds, std::uint64_t stream, std::uint32_t block);

/// N x r matrix of summed walk deposits, scaled by sqrt(N / (m r)) (or
/// sqrt(N / r) / m when signs are shared across walkers).
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t rows, std::vector<VertexId> anchors, Role role, std::uint32_t block,
                Storage storage);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return anchors_.size(); }
  std::span<const VertexId> anchors() const { return anchors_; }
  Role role() const { return role_; }
  std::uint32_t block() const { return block_; }
  Storage storage() const { return storage_; }
  /// Stored entries: all cells for dense storage, distinct touched (row, col)
  /// pairs for sparse storage.
  std::size_t nnz() const;

  double at(std::size_t row, std::size_t col) const;
  /// Row-major copy.
  std::vector<double> dense() const;
  /// weights^T X, length cols().
  std::vector<double> left_project(std::span<const double> weights) const;

 private:
  friend FeatureMatrix sample_feature_matrix(const Graph&, const CoefficientScheme&,
                                             const WalkConfig&, const RandomTape&, std::uint64_t,
                                             std::uint64_t);
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  std::size_t rows_;
  std::vector<VertexId> anchors_;
  Role role_;
  std::uint32_t block_;
  Storage storage_;
  std::vector<double> dense_;
  std::vector<Entry> sparse_;  // sorted by (row, col), unique
};

/// Runs the walk sampler for one role on one graph. `stream` identifies the
/// graph within its dataset; walks on different streams are independent.
FeatureMatrix sample_feature_matrix(const Graph& g, const CoefficientScheme& scheme,
                                    const WalkConfig& cfg, const RandomTape& tape,
                                    std::uint64_t anchor_seed, std::uint64_t stream = 0);

/// Everything that must agree for two embeddings to be comparable.
struct Provenance {
  TapeSeeds seeds{0, 0};
  std::uint64_t scheme_fingerprint = 0;
  std::uint32_t walks = 0;
  double p_halt = 0.0;
  std::size_t anchors = 0;  // 0 means all vertices
  std::uint32_t d_g = 0;
  int truncation = 0;
  GDistribution g_distribution = GDistribution::rademacher;
  SharingMode sharing = SharingMode::per_walker;
  // Label alphabet of the embedded graph. Informational: z-variables are keyed
  // by label value, so differing alphabets still share tapes.
  Label n_labels = 1;

  bool compatible_with(const Provenance& other) const;
  /// Hash over the compatibility fields.
  std::uint64_t hash() const;
};

struct GraphEmbedding {
  std::vector<double> phi;
  Provenance provenance;
};

/// Coordinate k of the embedding: (v^T C_k)(D_k^T w) for block k, without the
/// 1/sqrt(d_G) factor. Walk deposits are projected on the fly, so memory is
/// O(N + r) regardless of storage mode.
double block_feature(const Graph& g, const MeasureVector& measure, const CoefficientScheme& scheme,
                     const WalkConfig& cfg, const TapeSeeds& seeds, std::uint64_t stream,
                     std::uint32_t block);

GraphEmbedding embed_graph(const Graph& g, const MeasureVector& measure,
                           const CoefficientScheme& scheme, const WalkConfig& cfg,
                           const TapeSeeds& seeds, std::uint64_t stream);
inline GraphEmbedding embed_graph(const Graph& g, const MeasureVector& measure,
                                  const CoefficientScheme& scheme, const WalkConfig& cfg,
                                  std::uint64_t master_seed, std::uint64_t stream) {
  return embed_graph(g, measure, scheme, cfg, TapeSeeds::from_master(master_seed), stream);
}

/// Embeds every graph with one shared tape family; graph i uses stream i.
/// Work is split over (graph, block) tasks, so the result does not depend on
/// `threads`. Throws TimeBudgetExceeded once `deadline` passes.
std::vector<GraphEmbedding> embed_dataset(std::span<const Graph> graphs,
                                          std::span<const MeasureVector> measures,
                                          const CoefficientScheme& scheme, const WalkConfig& cfg,
                                          const TapeSeeds& seeds, unsigned threads = 1,
                                          Deadline deadline = std::nullopt);

/// phi(G1)^T phi(G2); throws ProvenanceError on incompatible embeddings.
double estimate_kernel(const GraphEmbedding& a, const GraphEmbedding& b);

/// Kernel estimate averaged over the d_G blocks, with G1 on stream 0 and G2
/// on stream 1.
double pair_estimate(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                     const MeasureVector& m2, const CoefficientScheme& scheme,
                     const WalkConfig& cfg, const TapeSeeds& seeds);
inline double pair_estimate(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                            const MeasureVector& m2, const CoefficientScheme& scheme,
                            const WalkConfig& cfg, std::uint64_t master_seed) {
  return pair_estimate(g1, g2, m1, m2, scheme, cfg, TapeSeeds::from_master(master_seed));
}

struct GramResult {
  std::size_t graphs = 0;
  std::size_t dim = 0;
  std::vector<double> design;  // graphs x dim, row-major
  std::vector<double> gram;    // graphs x graphs, row-major, symmetric

  double phi(std::size_t i, std::size_t k) const { return design[i * dim + k]; }
  double at(std::size_t i, std::size_t j) const { return gram[i * graphs + j]; }
};

GramResult gram_matrix(std::span<const GraphEmbedding> embeddings);

}  // namespace gvoys
