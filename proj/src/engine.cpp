#include "gvoys/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "gvoys/parallel.hpp"
#include "gvoys/random.hpp"

namespace gvoys {

void WalkConfig::validate() const {
  if (walks == 0) throw ConfigError("number of walks must be >= 1");
  if (!(p_halt > 0.0 && p_halt < 1.0)) throw ConfigError("p_halt must lie in (0, 1)");
  if (anchors && *anchors == 0) throw ConfigError("anchor count must be >= 1");
  if (d_g == 0) throw ConfigError("d_G must be >= 1");
}

void WalkConfig::check_scheme(const CoefficientScheme& scheme) const {
  if (truncation && *truncation != scheme.truncation())
    throw ConfigError("walk truncation " + std::to_string(*truncation) +
                      " does not match scheme truncation " + std::to_string(scheme.truncation()));
}

std::size_t WalkConfig::anchors_for(std::size_t n) const {
  return anchors ? std::min(*anchors, n) : n;
}

std::vector<VertexId> sample_anchors(std::size_t n, std::optional<std::size_t> count,
                                     std::uint64_t seed) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  if (!count || *count >= n) return ids;
  // Partial Fisher-Yates.
  KeyedStream rng(seed);
  for (std::size_t i = 0; i < *count; ++i) {
    const auto j = i + rng.index(n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(*count);
  return ids;
}

std::uint64_t anchor_seed(const TapeSeeds& seeds, std::uint64_t stream, std::uint32_t block) {
  return key_hash({seeds.walk_seed, 0x616e63686f72ULL, stream, block});
}

namespace {

constexpr std::int64_t kNoColumn = -1;

std::vector<std::int64_t> column_lookup(std::size_t n, std::span<const VertexId> anchors) {
  std::vector<std::int64_t> column(n, kNoColumn);
  for (std::size_t j = 0; j < anchors.size(); ++j) column[anchors[j]] = static_cast<std::int64_t>(j);
  return column;
}

double feature_scale(std::size_t n, std::size_t r, const WalkConfig& cfg) {
  const double ratio = static_cast<double>(n) / static_cast<double>(r);
  const double m = cfg.walks;
  return cfg.sharing == SharingMode::per_walker ? std::sqrt(ratio / m) : std::sqrt(ratio) / m;
}

constexpr std::size_t kChunk = 4096;
constexpr std::size_t kNoSlot = ~std::size_t{0};

struct Walker {
  VertexId start;
  VertexId at;
  double load;
  std::uint64_t hop_key;
};

// Simulates m walkers out of every start vertex and calls
// sink(start, column, deposit) for each deposit at an anchor. Termination
// variables depend only on (step, walker), so all walks of one walker share
// a length and are advanced in lockstep. Starts with zero weight are skipped
// when `start_weight` is non-empty.
template <class Sink>
void run_walks(const Graph& g, const CoefficientScheme& scheme, const WalkConfig& cfg,
               const RandomTape& tape, std::uint64_t stream, std::span<const std::int64_t> column,
               std::span<const double> start_weight, Sink&& sink) {
  const auto n = g.size();
  const auto truncation = static_cast<std::uint32_t>(scheme.truncation());
  const auto sqrt_f = scheme.sqrt_f();
  const double survival = 1.0 / std::sqrt(1.0 - cfg.p_halt);
  const Label label_slots = g.n_labels() + 1;
  const auto labels = g.labels();

  std::vector<double> step_sign(truncation + 1);
  std::vector<double> label_sign(static_cast<std::size_t>(truncation + 1) * label_slots);
  const auto offsets = g.offsets();
  const auto targets = g.targets();
  std::vector<Walker> active;
  active.reserve(n);
  std::vector<std::size_t> slot(kChunk);

  for (std::uint32_t w = 0; w < cfg.walks; ++w) {
    std::uint32_t length = 0;
    while (length < truncation && tape.t(length, w) >= cfg.p_halt) ++length;
    for (std::uint32_t l = 0; l <= length; ++l) {
      step_sign[l] = tape.g(l, w) * sqrt_f[l];
      for (Label a = 1; a < label_slots; ++a) label_sign[l * label_slots + a] = tape.z(a, l, w);
    }

    active.clear();
    for (VertexId k = 0; k < n; ++k) {
      if (!start_weight.empty() && start_weight[k] == 0.0) continue;
      active.push_back({k, k, label_sign[labels[k]], tape.hop_base(stream, w, k)});
    }

    for (std::uint32_t l = 0; l <= length && !active.empty(); ++l) {
      const double modulation = step_sign[l];
      const bool last = l == length;
      std::size_t kept = 0;
      for (std::size_t begin = 0; begin < active.size(); begin += kChunk) {
        const std::size_t end = std::min(active.size(), begin + kChunk);
        // First pass picks every walker's next CSR slot and prefetches it, so
        // the misses on large graphs overlap instead of serializing.
        if (!last) {
          for (std::size_t i = begin; i < end; ++i) {
            const Walker& walker = active[i];
            const auto lo = offsets[walker.at], degree = offsets[walker.at + 1] - lo;
            slot[i - begin] = degree == 0 ? kNoSlot
                                          : lo + to_index(RandomTape::hop_step(walker.hop_key, l), degree);
            if (degree != 0) __builtin_prefetch(targets.data() + slot[i - begin]);
          }
        }
        for (std::size_t i = begin; i < end; ++i) {
          Walker walker = active[i];
          if (const auto col = column[walker.at]; col != kNoColumn && modulation != 0.0)
            sink(walker.start, static_cast<std::size_t>(col), modulation * walker.load);
          if (last || slot[i - begin] == kNoSlot) continue;  // halted, or isolated start
          const auto next = targets[slot[i - begin]];
          walker.load *= static_cast<double>(offsets[walker.at + 1] - offsets[walker.at]) * survival;
          walker.load *= label_sign[(l + 1) * label_slots + labels[next]];
          walker.at = next;
          active[kept++] = walker;
        }
      }
      active.resize(kept);
    }
  }
}

Provenance make_provenance(const Graph& g, const CoefficientScheme& scheme, const WalkConfig& cfg,
                           const TapeSeeds& seeds) {
  Provenance p;
  p.seeds = seeds;
  p.scheme_fingerprint = scheme.fingerprint();
  p.walks = cfg.walks;
  p.p_halt = cfg.p_halt;
  p.anchors = cfg.anchors.value_or(0);
  p.d_g = cfg.d_g;
  p.truncation = scheme.truncation();
  p.g_distribution = cfg.g_distribution;
  p.sharing = cfg.sharing;
  p.n_labels = g.n_labels();
  return p;
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::size_t rows, std::vector<VertexId> anchors, Role role,
                             std::uint32_t block, Storage storage)
    : rows_(rows), anchors_(std::move(anchors)), role_(role), block_(block), storage_(storage) {
  if (storage_ == Storage::dense) dense_.assign(rows_ * anchors_.size(), 0.0);
}

std::size_t FeatureMatrix::nnz() const {
  return storage_ == Storage::dense ? dense_.size() : sparse_.size();
}

double FeatureMatrix::at(std::size_t row, std::size_t col) const {
  if (storage_ == Storage::dense) return dense_[row * cols() + col];
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), std::pair{row, col},
                             [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{e.row, e.col} < key;
                             });
  return (it != sparse_.end() && it->row == row && it->col == col) ? it->value : 0.0;
}

std::vector<double> FeatureMatrix::dense() const {
  if (storage_ == Storage::dense) return dense_;
  std::vector<double> out(rows_ * cols(), 0.0);
  for (const auto& e : sparse_) out[e.row * cols() + e.col] = e.value;
  return out;
}

std::vector<double> FeatureMatrix::left_project(std::span<const double> weights) const {
  std::vector<double> out(cols(), 0.0);
  if (storage_ == Storage::dense) {
    for (std::size_t k = 0; k < rows_; ++k)
      for (std::size_t j = 0; j < cols(); ++j) out[j] += weights[k] * dense_[k * cols() + j];
  } else {
    for (const auto& e : sparse_) out[e.col] += weights[e.row] * e.value;
  }
  return out;
}

FeatureMatrix sample_feature_matrix(const Graph& g, const CoefficientScheme& scheme,
                                    const WalkConfig& cfg, const RandomTape& tape,
                                    std::uint64_t anchor_seed, std::uint64_t stream) {
  cfg.validate();
  cfg.check_scheme(scheme);
  const auto n = g.size();
  FeatureMatrix out(n, sample_anchors(n, cfg.anchors, anchor_seed), tape.role(), tape.block(), cfg.storage);
  if (n == 0) return out;
  const auto column = column_lookup(n, out.anchors_);
  const auto r = out.cols();
  const double scale = feature_scale(n, r, cfg);

  if (cfg.storage == Storage::dense) {
    run_walks(g, scheme, cfg, tape, stream, column, {},
              [&](VertexId k, std::size_t j, double deposit) { out.dense_[k * r + j] += deposit; });
    for (double& x : out.dense_) x *= scale;
    return out;
  }

  std::vector<FeatureMatrix::Entry> deposits;
  run_walks(g, scheme, cfg, tape, stream, column, {},
            [&](VertexId k, std::size_t j, double deposit) { deposits.push_back({k, j, deposit}); });
  // Stable order keeps each cell's additions in generation order, matching
  // the dense accumulation bit for bit.
  std::stable_sort(deposits.begin(), deposits.end(), [](const auto& a, const auto& b) {
    return std::pair{a.row, a.col} < std::pair{b.row, b.col};
  });
  for (std::size_t i = 0; i < deposits.size();) {
    double sum = 0.0;
    std::size_t j = i;
    for (; j < deposits.size() && deposits[j].row == deposits[i].row && deposits[j].col == deposits[i].col; ++j)
      sum += deposits[j].value;
    out.sparse_.push_back({deposits[i].row, deposits[i].col, sum * scale});
    i = j;
  }
  return out;
}

bool Provenance::compatible_with(const Provenance& o) const {
  return seeds == o.seeds && scheme_fingerprint == o.scheme_fingerprint && walks == o.walks &&
         std::bit_cast<std::uint64_t>(p_halt) == std::bit_cast<std::uint64_t>(o.p_halt) &&
         anchors == o.anchors && d_g == o.d_g && truncation == o.truncation &&
         g_distribution == o.g_distribution && sharing == o.sharing;
}

std::uint64_t Provenance::hash() const {
  return key_hash({seeds.sign_seed, seeds.walk_seed, scheme_fingerprint, walks,
                   std::bit_cast<std::uint64_t>(p_halt), anchors, d_g,
                   static_cast<std::uint64_t>(truncation), static_cast<std::uint64_t>(g_distribution),
                   static_cast<std::uint64_t>(sharing)});
}

double block_feature(const Graph& g, const MeasureVector& measure, const CoefficientScheme& scheme,
                     const WalkConfig& cfg, const TapeSeeds& seeds, std::uint64_t stream,
                     std::uint32_t block) {
  const auto n = g.size();
  if (n == 0) return 0.0;
  const auto anchors = sample_anchors(n, cfg.anchors, anchor_seed(seeds, stream, block));
  const auto column = column_lookup(n, anchors);
  const auto r = anchors.size();

  auto project = [&](Role role, std::span<const double> weights) {
    const RandomTape tape(seeds.sign_seed, seeds.walk_seed, role, block, cfg.g_distribution, cfg.sharing);
    std::vector<double> acc(r, 0.0);
    run_walks(g, scheme, cfg, tape, stream, column, weights,
              [&](VertexId k, std::size_t j, double deposit) { acc[j] += weights[k] * deposit; });
    return acc;
  };
  const auto left = project(Role::C, measure.v_factor);
  const auto right = project(Role::D, measure.w_factor);
  const double scale = feature_scale(n, r, cfg);
  double dot = 0.0;
  for (std::size_t j = 0; j < r; ++j) dot += left[j] * right[j];
  return scale * scale * dot;
}

GraphEmbedding embed_graph(const Graph& g, const MeasureVector& measure,
                           const CoefficientScheme& scheme, const WalkConfig& cfg,
                           const TapeSeeds& seeds, std::uint64_t stream) {
  cfg.validate();
  cfg.check_scheme(scheme);
  if (measure.v_factor.size() != g.size() || measure.w_factor.size() != g.size())
    throw ConfigError("measure length does not match vertex count");
  GraphEmbedding out{std::vector<double>(cfg.d_g), make_provenance(g, scheme, cfg, seeds)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(cfg.d_g));
  for (std::uint32_t k = 0; k < cfg.d_g; ++k)
    out.phi[k] = norm * block_feature(g, measure, scheme, cfg, seeds, stream, k);
  return out;
}

std::vector<GraphEmbedding> embed_dataset(std::span<const Graph> graphs,
                                          std::span<const MeasureVector> measures,
                                          const CoefficientScheme& scheme, const WalkConfig& cfg,
                                          const TapeSeeds& seeds, unsigned threads, Deadline deadline) {
  cfg.validate();
  cfg.check_scheme(scheme);
  if (graphs.size() != measures.size()) throw ConfigError("one measure per graph required");
  std::vector<GraphEmbedding> out;
  out.reserve(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (measures[i].v_factor.size() != graphs[i].size() || measures[i].w_factor.size() != graphs[i].size())
      throw ConfigError("measure length does not match vertex count for graph " + std::to_string(i));
    out.push_back({std::vector<double>(cfg.d_g), make_provenance(graphs[i], scheme, cfg, seeds)});
  }

  const double norm = 1.0 / std::sqrt(static_cast<double>(cfg.d_g));
  parallel_for(graphs.size() * cfg.d_g, threads, [&](std::size_t task) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
      throw TimeBudgetExceeded("embedding exceeded its time budget");
    const std::size_t i = task / cfg.d_g;
    const auto k = static_cast<std::uint32_t>(task % cfg.d_g);
    out[i].phi[k] = norm * block_feature(graphs[i], measures[i], scheme, cfg, seeds, i, k);
  });
  return out;
}

double estimate_kernel(const GraphEmbedding& a, const GraphEmbedding& b) {
  if (!a.provenance.compatible_with(b.provenance) || a.phi.size() != b.phi.size())
    throw ProvenanceError("embeddings come from different tape families or configurations");
  double dot = 0.0;
  for (std::size_t k = 0; k < a.phi.size(); ++k) dot += a.phi[k] * b.phi[k];
  return dot;
}

double pair_estimate(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                     const MeasureVector& m2, const CoefficientScheme& scheme,
                     const WalkConfig& cfg, const TapeSeeds& seeds) {
  const auto e1 = embed_graph(g1, m1, scheme, cfg, seeds, 0);
  const auto e2 = embed_graph(g2, m2, scheme, cfg, seeds, 1);
  return estimate_kernel(e1, e2);
}

GramResult gram_matrix(std::span<const GraphEmbedding> embeddings) {
  GramResult out;
  out.graphs = embeddings.size();
  if (embeddings.empty()) return out;
  out.dim = embeddings.front().phi.size();
  for (const auto& e : embeddings)
    if (!e.provenance.compatible_with(embeddings.front().provenance) || e.phi.size() != out.dim)
      throw ProvenanceError("gram matrix needs embeddings from one tape family");
  out.design.reserve(out.graphs * out.dim);
  for (const auto& e : embeddings) out.design.insert(out.design.end(), e.phi.begin(), e.phi.end());
  out.gram.assign(out.graphs * out.graphs, 0.0);
  for (std::size_t i = 0; i < out.graphs; ++i) {
    for (std::size_t j = i; j < out.graphs; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < out.dim; ++k) dot += out.phi(i, k) * out.phi(j, k);
      out.gram[i * out.graphs + j] = dot;
      out.gram[j * out.graphs + i] = dot;
    }
  }
  return out;
}

}  // namespace gvoys
