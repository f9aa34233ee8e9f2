#include "gvoys/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gvoys/random.hpp"

namespace gvoys {

namespace {

void check_deadline(const Deadline& deadline) {
  if (deadline && std::chrono::steady_clock::now() > *deadline)
    throw TimeBudgetExceeded("oracle exceeded its time budget");
}

// y = A x for the symmetric adjacency of g.
void multiply(const Graph& g, std::span<const double> x, std::span<double> y) {
  for (VertexId u = 0; u < g.size(); ++u) {
    double sum = 0.0;
    for (VertexId v : g.neighbors(u)) sum += x[v];
    y[u] = sum;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct ProductSystem {
  ProductGraph product;
  std::vector<double> v;
  std::vector<double> w;
};

ProductSystem build_system(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                           const MeasureVector& m2, const ProductLimits& limits) {
  if (m1.v_factor.size() != g1.size() || m1.w_factor.size() != g1.size() ||
      m2.v_factor.size() != g2.size() || m2.w_factor.size() != g2.size())
    throw std::invalid_argument("measure length does not match vertex count");
  check_product_limits(g1, g2, limits);
  ProductSystem sys{direct_product(g1, g2), {}, {}};
  sys.v = product_measure(sys.product, m1.v_factor, m2.v_factor);
  sys.w = product_measure(sys.product, m1.w_factor, m2.w_factor);
  return sys;
}

}  // namespace

void check_product_limits(const Graph& g1, const Graph& g2, const ProductLimits& limits) {
  const auto size = product_size(g1, g2);
  if (size.vertices > limits.max_vertices || size.edges > limits.max_edges)
    throw MemoryGuardError("product graph with " + std::to_string(size.vertices) + " vertices and " +
                           std::to_string(size.edges) + " edges exceeds the limit of " +
                           std::to_string(limits.max_vertices) + " vertices / " +
                           std::to_string(limits.max_edges) + " edges");
}

void OracleConfig::validate() const {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

double exact_rwk(const Graph& g1, const Graph& g2, const MeasureVector& m1, const MeasureVector& m2,
                 std::span<const double> mu, int truncation, const ProductLimits& limits,
                 Deadline deadline) {
  if (truncation < 0 || mu.size() < static_cast<std::size_t>(truncation) + 1)
    throw std::invalid_argument("mu must provide coefficients 0..T");
  const auto sys = build_system(g1, g2, m1, m2, limits);
  const auto& a = sys.product.graph;
  if (a.size() == 0) return 0.0;
  std::vector<double> power = sys.w, next(a.size());
  double total = mu[0] * dot(sys.v, power);
  for (int i = 1; i <= truncation; ++i) {
    check_deadline(deadline);
    multiply(a, power, next);
    std::swap(power, next);
    total += mu[i] * dot(sys.v, power);
  }
  return total;
}

double naive_product_grf(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                         const MeasureVector& m2, const CoefficientScheme& scheme,
                         std::uint32_t walks, std::optional<std::size_t> anchors, double p_halt,
                         std::uint64_t seed, const ProductLimits& limits, Deadline deadline) {
  if (walks == 0) throw std::invalid_argument("number of walks must be >= 1");
  if (!(p_halt > 0.0 && p_halt < 1.0)) throw std::invalid_argument("p_halt must lie in (0, 1)");
  const auto sys = build_system(g1, g2, m1, m2, limits);
  const auto& pg = sys.product.graph;
  const auto n = pg.size();
  if (n == 0) return 0.0;

  const auto anchor_set = sample_anchors(n, anchors, key_hash({seed, 0x6e616976ULL}));
  std::vector<std::int64_t> column(n, -1);
  for (std::size_t j = 0; j < anchor_set.size(); ++j) column[anchor_set[j]] = static_cast<std::int64_t>(j);
  const auto r = anchor_set.size();
  const auto f = scheme.f();
  const auto truncation = static_cast<std::uint32_t>(scheme.truncation());
  const double survival = 1.0 / (1.0 - p_halt);

  // Each walk terminates independently; the importance weight of a prefix of
  // length l is prod(d) / (1 - p_halt)^l.
  auto project = [&](std::uint64_t role, std::span<const double> weights) {
    std::vector<double> acc(r, 0.0);
    for (VertexId k = 0; k < n; ++k) {
      if (weights[k] == 0.0) continue;
      check_deadline(deadline);
      for (std::uint32_t w = 0; w < walks; ++w) {
        KeyedStream rng(key_hash({seed, role, k, w}));
        VertexId at = k;
        double load = 1.0;
        for (std::uint32_t l = 0;; ++l) {
          if (column[at] >= 0) acc[static_cast<std::size_t>(column[at])] += weights[k] * f[l] * load;
          if (l == truncation || rng.uniform() < p_halt) break;
          const auto neighbors = pg.neighbors(at);
          if (neighbors.empty()) break;
          load *= static_cast<double>(neighbors.size()) * survival;
          at = neighbors[rng.index(neighbors.size())];
        }
      }
    }
    return acc;
  };
  const auto left = project(0, sys.v);
  const auto right = project(1, sys.w);
  const double scale = static_cast<double>(n) / static_cast<double>(r) /
                       (static_cast<double>(walks) * static_cast<double>(walks));
  return scale * dot(left, right);
}

double cg_geometric(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                    const MeasureVector& m2, double lambda, const OracleConfig& cfg) {
  cfg.validate();
  const auto sys = build_system(g1, g2, m1, m2, cfg.limits);
  const auto& a = sys.product.graph;
  const auto n = a.size();
  if (n == 0) return 0.0;
  const double w_norm = std::sqrt(dot(sys.w, sys.w));
  if (w_norm == 0.0) return 0.0;

  // Solve (I - lambda A) x = w from x = 0.
  std::vector<double> x(n, 0.0), residual = sys.w, direction = sys.w, image(n), product(n);
  double rr = dot(residual, residual);
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    if (std::sqrt(rr) <= cfg.tolerance * w_norm) return dot(sys.v, x);
    check_deadline(cfg.deadline);
    multiply(a, direction, product);
    for (std::size_t i = 0; i < n; ++i) image[i] = direction[i] - lambda * product[i];
    const double alpha = rr / dot(direction, image);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * direction[i];
      residual[i] -= alpha * image[i];
    }
    const double rr_next = dot(residual, residual);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) direction[i] = residual[i] + beta * direction[i];
  }
  if (std::sqrt(rr) <= cfg.tolerance * w_norm) return dot(sys.v, x);
  throw IterationLimitError("conjugate gradient hit the iteration cap with relative residual " +
                                std::to_string(std::sqrt(rr) / w_norm),
                            std::sqrt(rr) / w_norm);
}

double fixed_point_geometric(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                             const MeasureVector& m2, double lambda, const OracleConfig& cfg) {
  cfg.validate();
  const auto sys = build_system(g1, g2, m1, m2, cfg.limits);
  const auto& a = sys.product.graph;
  const auto n = a.size();
  if (n == 0) return 0.0;
  std::vector<double> x = sys.w, next(n), product(n);
  double change = 0.0;
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    check_deadline(cfg.deadline);
    multiply(a, x, product);
    change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = sys.w[i] + lambda * product[i];
      change = std::max(change, std::abs(next[i] - x[i]));
    }
    std::swap(x, next);
    if (change <= cfg.tolerance) return dot(sys.v, x);
  }
  throw IterationLimitError("fixed-point iteration hit the iteration cap with max change " +
                                std::to_string(change),
                            change);
}

}  // namespace gvoys
