#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "gvoys/coeffs.hpp"
#include "gvoys/engine.hpp"
#include "gvoys/graph.hpp"

namespace gvoys {

/// The product graph would exceed the materialization limits.
class MemoryGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped at its iteration cap.
class IterationLimitError : public std::runtime_error {
 public:
  IterationLimitError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct ProductLimits {
  std::uint64_t max_vertices = std::uint64_t{1} << 22;
  std::uint64_t max_edges = std::uint64_t{1} << 26;
};

/// Throws MemoryGuardError when G1 x G2 is above `limits`.
void check_product_limits(const Graph& g1, const Graph& g2, const ProductLimits& limits);

struct OracleConfig {
  int truncation = kDefaultTruncation;
  double tolerance = 1e-6;
  std::size_t max_iterations = 150000;
  ProductLimits limits;
  Deadline deadline;

  void validate() const;
};

/// sum_{i<=T} mu_i v^T A^i w on the materialized product graph, with v and w
/// the label-restricted Kronecker products of the per-graph factors.
double exact_rwk(const Graph& g1, const Graph& g2, const MeasureVector& m1, const MeasureVector& m2,
                 std::span<const double> mu, int truncation, const ProductLimits& limits = {},
                 Deadline deadline = std::nullopt);

/// Plain graph random features on the materialized product graph:
/// (v^T C)(D^T w) with C and D from independent walks. Returns 0 for an empty
/// product graph.
double naive_product_grf(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                         const MeasureVector& m2, const CoefficientScheme& scheme,
                         std::uint32_t walks, std::optional<std::size_t> anchors, double p_halt,
                         std::uint64_t seed, const ProductLimits& limits = {},
                         Deadline deadline = std::nullopt);

/// v^T (I - lambda A)^{-1} w by conjugate gradients; stops when
/// ||residual||_2 <= tolerance * ||w||_2.
double cg_geometric(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                    const MeasureVector& m2, double lambda, const OracleConfig& cfg = {});

/// The same quantity by iterating x <- w + lambda A x until the max-norm
/// change drops to the tolerance.
double fixed_point_geometric(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                             const MeasureVector& m2, double lambda, const OracleConfig& cfg = {});

}  // namespace gvoys
