#include "gvoys/analysis.hpp"

#include <cmath>
#include <numeric>

#include "gvoys/parallel.hpp"
#include "gvoys/random.hpp"
#include "gvoys/stats.hpp"

namespace gvoys {

namespace {

double l1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

WalkConfig single_block(WalkConfig cfg) {
  cfg.d_g = 1;
  return cfg;
}

}  // namespace

double mcdiarmid_constant(std::uint32_t walks, double c1, double c2, double l1_product) {
  if (walks == 0) throw std::invalid_argument("number of walks must be >= 1");
  const double m = walks;
  const double a = 2.0 * m - 1.0;
  return 2.0 * (4.0 * a / (m * m) + 4.0 * a * a / (m * m * m * m)) * c1 * c1 * c2 * c2 * l1_product;
}

double mcdiarmid_constant(std::uint32_t walks, const Graph& g1, const Graph& g2,
                          const CoefficientScheme& scheme, double p_halt, const MeasureVector& m1,
                          const MeasureVector& m2) {
  const double c1 = convergence_constant(g1, scheme, p_halt);
  const double c2 = convergence_constant(g2, scheme, p_halt);
  return mcdiarmid_constant(walks, c1, c2,
                            l1(m1.v_factor) * l1(m1.w_factor) * l1(m2.v_factor) * l1(m2.w_factor));
}

double concentration_bound(double epsilon, std::uint32_t walks, double k_const) {
  return std::min(1.0, 2.0 * std::exp(-2.0 * epsilon * epsilon / (walks * k_const * k_const)));
}

std::vector<double> sample_estimates(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                     const MeasureVector& m2, const CoefficientScheme& scheme,
                                     const WalkConfig& cfg, std::size_t count, std::uint64_t seed,
                                     unsigned threads) {
  const auto block_cfg = single_block(cfg);
  std::vector<double> out(count);
  parallel_for(count, threads, [&](std::size_t t) {
    out[t] = pair_estimate(g1, g2, m1, m2, scheme, block_cfg, key_hash({seed, t}));
  });
  return out;
}

ConcentrationReport concentration_study(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                                        const MeasureVector& m2, const CoefficientScheme& scheme,
                                        const WalkConfig& cfg, std::size_t trials,
                                        std::span<const double> epsilons, std::uint64_t seed,
                                        unsigned threads) {
  if (cfg.sharing != SharingMode::shared_across_walkers)
    throw ConfigError("concentration study needs g and z shared across walkers");
  if (trials == 0) throw ConfigError("concentration study needs at least one trial");
  const auto block_cfg = single_block(cfg);

  ConcentrationReport report;
  report.c1 = convergence_constant(g1, scheme, cfg.p_halt);
  report.c2 = convergence_constant(g2, scheme, cfg.p_halt);
  report.k_const = mcdiarmid_constant(cfg.walks, g1, g2, scheme, cfg.p_halt, m1, m2);
  report.walks = cfg.walks;
  report.trials = trials;

  const std::uint64_t sign_seed = key_hash({seed, 0x7369676eULL});
  auto run = [&](std::uint64_t tag, std::size_t count) {
    std::vector<double> out(count);
    parallel_for(count, threads, [&](std::size_t t) {
      const TapeSeeds seeds{sign_seed, key_hash({seed, tag, t})};
      out[t] = pair_estimate(g1, g2, m1, m2, scheme, block_cfg, seeds);
    });
    return out;
  };

  RunningStats pilot;
  for (double x : run(0x70696c6f74ULL, 10 * trials)) pilot.add(x);
  report.conditional_mean = pilot.mean();
  report.mean_standard_error = pilot.count() > 1 ? pilot.standard_error() : 0.0;
  const double cushion = 2.0 * report.mean_standard_error;

  const auto estimates = run(0x747269616cULL, trials);
  for (double eps : epsilons) {
    std::size_t exceed = 0;
    for (double x : estimates)
      if (std::abs(x - report.conditional_mean) - cushion >= eps) ++exceed;
    report.epsilons.push_back(eps);
    report.bound.push_back(concentration_bound(eps, cfg.walks, report.k_const));
    report.empirical_tail.push_back(static_cast<double>(exceed) / static_cast<double>(trials));
  }
  return report;
}

VarianceReport variance_study(const Graph& g1, const Graph& g2, const MeasureVector& m1,
                              const MeasureVector& m2, const CoefficientScheme& scheme,
                              const WalkConfig& cfg, GDistribution distribution, std::size_t trials,
                              std::uint64_t seed, unsigned threads) {
  auto study_cfg = cfg;
  study_cfg.g_distribution = distribution;
  RunningStats stats;
  for (double x : sample_estimates(g1, g2, m1, m2, scheme, study_cfg, trials, seed, threads)) stats.add(x);
  return {distribution, trials, stats.mean(), stats.variance(),
          trials > 1 ? stats.standard_error() : 0.0};
}

}  // namespace gvoys
