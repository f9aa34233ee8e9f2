#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gvoys/coeffs.hpp"
#include "gvoys/engine.hpp"
#include "gvoys/graph.hpp"

namespace gvoys {

/// Bounded-difference constant
///   k = 2 (4(2m-1)/m^2 + 4(2m-1)^2/m^4) c1^2 c2^2 |v1|_1 |w1|_1 |v2|_1 |w2|_1.
double mcdiarmid_constant(std::uint32_t walks, double c1, double c2, double l1_product);
/// Same, with c(G) and the L1 norms computed from the inputs. Propagates
/// DivergenceError.
double mcdiarmid_constant(std::uint32_t walks, const Graph& g1, const Graph& g2,
                          const CoefficientScheme& scheme, double p_halt, const MeasureVector& m1,
                          const MeasureVector& m2);

/// min(1, 2 exp(-2 eps^2 / (m k^2))).
double concentration_bound(double epsilon, std::uint32_t walks, double k_const);

struct ConcentrationReport {
  double c1 = 0.0;
  double c2 = 0.0;
  double k_const = 0.0;
  std::uint32_t walks = 0;
  std::size_t trials = 0;
  double conditional_mean = 0.0;  // pilot estimate of E[K | g, z]
  double mean_standard_error = 0.0;
  std::vector<double> epsilons;
  std::vector<double> bound;
  std::vector<double> empirical_tail;
};

/// Holds one draw of g and z fixed (shared across walkers) and resamples
/// walks and termination variables per trial. The conditional mean comes
/// from a pilot run ten times larger; a trial counts towards the tail at eps
/// when |K - mean| - 2 se >= eps. Requires cfg.sharing ==
/// shared_across_walkers; only the first block is used.
ConcentrationReport concentration_study(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                        const MeasureVector& m2, const CoefficientScheme& scheme,
                                        const WalkConfig& cfg, std::size_t trials,
                                        std::span<const double> epsilons, std::uint64_t seed,
                                        unsigned threads = 1);

struct VarianceReport {
  GDistribution distribution = GDistribution::rademacher;
  std::size_t trials = 0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double standard_error = 0.0;
};

/// Independent single-block estimates under the requested g distribution.
/// Trial t uses master seed key_hash({seed, t}) for either distribution, so
/// two studies with the same seed are paired.
VarianceReport variance_study(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                              const MeasureVector& m2, const CoefficientScheme& scheme,
                              const WalkConfig& cfg, GDistribution distribution, std::size_t trials,
                              std::uint64_t seed, unsigned threads = 1);

/// Single-block estimates for trials 0..count-1 with master seeds
/// key_hash({seed, t}); the building block of the studies above.
std::vector<double> sample_estimates(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                     const MeasureVector& m2, const CoefficientScheme& scheme,
                                     const WalkConfig& cfg, std::size_t count, std::uint64_t seed,
                                     unsigned threads = 1);

}  // namespace gvoys
