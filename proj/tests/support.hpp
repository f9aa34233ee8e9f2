#pragma once

// Test-only reference computations. These deliberately avoid the library's
// product-graph and solver code paths: everything is built from dense
// Kronecker products.

#include <Eigen/Dense>

#include <cmath>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "gvoys/graph.hpp"
#include "gvoys/stats.hpp"

namespace gvoys::testing {

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph path_graph(std::size_t n, std::vector<Label> labels = {}) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph(n, edges, std::move(labels));
}

inline Graph single_vertex(Label label = 1) { return Graph(1, {}, {label}, label); }

inline Eigen::MatrixXd adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (auto [u, v] : g.edge_list()) a(u, v) = a(v, u) = 1.0;
  return a;
}

/// Dense product system: A = mask (A1 kron A2) mask with mask the 0/1
/// label-match indicator; v, w the masked Kronecker measures.
struct DenseSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd v;
  Eigen::VectorXd w;
};

inline DenseSystem dense_system(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                const MeasureVector& m2) {
  const auto n1 = g1.size(), n2 = g2.size();
  const Eigen::MatrixXd a1 = adjacency(g1), a2 = adjacency(g2);
  DenseSystem s{Eigen::MatrixXd::Zero(n1 * n2, n1 * n2), Eigen::VectorXd::Zero(n1 * n2),
                Eigen::VectorXd::Zero(n1 * n2)};
  auto match = [&](std::size_t u, std::size_t x) { return g1.label(u) == g2.label(x); };
  for (std::size_t u = 0; u < n1; ++u)
    for (std::size_t x = 0; x < n2; ++x) {
      if (!match(u, x)) continue;
      s.v(u * n2 + x) = m1.v_factor[u] * m2.v_factor[x];
      s.w(u * n2 + x) = m1.w_factor[u] * m2.w_factor[x];
      for (std::size_t u2 = 0; u2 < n1; ++u2)
        for (std::size_t x2 = 0; x2 < n2; ++x2)
          if (match(u2, x2)) s.a(u * n2 + x, u2 * n2 + x2) = a1(u, u2) * a2(x, x2);
    }
  return s;
}

inline double dense_series_kernel(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                  const MeasureVector& m2, std::span<const double> mu) {
  const auto s = dense_system(g1, g2, m1, m2);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(s.a.rows(), s.a.cols());
  double total = 0.0;
  for (double coefficient : mu) {
    total += coefficient * s.v.dot(power * s.w);
    power = power * s.a;
  }
  return total;
}

inline double dense_geometric_kernel(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                     const MeasureVector& m2, double lambda) {
  const auto s = dense_system(g1, g2, m1, m2);
  if (s.a.rows() == 0) return 0.0;
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(s.a.rows(), s.a.cols()) - lambda * s.a;
  return s.v.dot(system.fullPivLu().solve(s.w));
}

/// Quadratic brute-force product: vertex pairs and undirected edges as sets.
inline std::pair<std::set<std::pair<VertexId, VertexId>>,
                 std::set<std::pair<std::pair<VertexId, VertexId>, std::pair<VertexId, VertexId>>>>
brute_force_product(const Graph& g1, const Graph& g2) {
  std::set<std::pair<VertexId, VertexId>> vertices;
  std::set<std::pair<std::pair<VertexId, VertexId>, std::pair<VertexId, VertexId>>> edges;
  const auto a1 = adjacency(g1), a2 = adjacency(g2);
  for (VertexId u = 0; u < g1.size(); ++u)
    for (VertexId v = 0; v < g2.size(); ++v)
      if (g1.label(u) == g2.label(v)) vertices.insert({u, v});
  for (auto p : vertices)
    for (auto q : vertices)
      if (p < q && a1(p.first, q.first) != 0.0 && a2(p.second, q.second) != 0.0) edges.insert({p, q});
  return {vertices, edges};
}

/// |mean - target| <= sigmas * standard error.
inline bool within_standard_errors(const RunningStats& s, double target, double sigmas = 3.0) {
  return std::abs(s.mean() - target) <= sigmas * s.standard_error();
}

}  // namespace gvoys::testing
