#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gvoys/engine.hpp"
#include "gvoys/oracles.hpp"
#include "gvoys/random.hpp"
#include "support.hpp"

using namespace gvoys;
using namespace gvoys::testing;

namespace {

OracleConfig tight() {
  OracleConfig cfg;
  cfg.tolerance = 1e-12;
  return cfg;
}

std::pair<Graph, Graph> labelled_pair(std::uint64_t seed, std::size_t n, double p = 0.5) {
  return {assign_random_labels(erdos_renyi(n, p, key_hash({seed, 1})), 2, key_hash({seed, 2})),
          assign_random_labels(erdos_renyi(n, p, key_hash({seed, 3})), 2, key_hash({seed, 4}))};
}

}  // namespace

TEST_CASE("exact_rwk on trivial inputs") {
  const auto a = single_vertex(1), b = single_vertex(2);
  const auto ones_a = factorized_measure(a, MeasureKind::ones);
  const auto ones_b = factorized_measure(b, MeasureKind::ones);
  const std::vector<double> delta{1, 0, 0, 0};
  CHECK(exact_rwk(a, a, ones_a, ones_a, delta, 3) == 1.0);
  CHECK(exact_rwk(a, b, ones_a, ones_b, delta, 3) == 0.0);
  CHECK_THROWS(exact_rwk(a, a, ones_a, ones_a, delta, 5));
}

TEST_CASE("K2 x K2 geometric kernel") {
  const auto k2 = complete_graph(2);
  const auto m = factorized_measure(k2, MeasureKind::uniform);
  const double closed = 1.0 / (4.0 * 0.9);
  CHECK(std::abs(exact_rwk(k2, k2, m, m, geometric_scheme(0.1, 40).mu(), 40) - closed) < 1e-7);
  OracleConfig cfg;
  cfg.tolerance = 1e-10;
  CHECK(std::abs(cg_geometric(k2, k2, m, m, 0.1, cfg) - closed) < 1e-8);
  CHECK(std::abs(fixed_point_geometric(k2, k2, m, m, 0.1, tight()) - closed) < 1e-8);
  CHECK(cg_geometric(k2, k2, m, m, 0.0) == doctest::Approx(0.25));
  CHECK(fixed_point_geometric(k2, k2, m, m, 0.0) == doctest::Approx(0.25));
}

TEST_CASE("lambda = 0 reduces to the product of inner products") {
  const auto g1 = erdos_renyi(5, 0.5, 1), g2 = erdos_renyi(4, 0.5, 2);
  const auto m1 = factorized_measure(g1, {0.1, 0.2, 0.3, 0.2, 0.2}, {1, 2, 3, 4, 5});
  const auto m2 = factorized_measure(g2, {0.5, 0.5, 0, 1}, {1, 1, 2, 0.5});
  const double v1w1 = std::inner_product(m1.v_factor.begin(), m1.v_factor.end(), m1.w_factor.begin(), 0.0);
  const double v2w2 = std::inner_product(m2.v_factor.begin(), m2.v_factor.end(), m2.w_factor.begin(), 0.0);
  CHECK(cg_geometric(g1, g2, m1, m2, 0.0) == doctest::Approx(v1w1 * v2w2));
}

TEST_CASE("solvers agree with each other and with dense linear algebra") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [g1, g2] = labelled_pair(seed, 8);
    const auto m1 = factorized_measure(g1, MeasureKind::uniform);
    const auto m2 = factorized_measure(g2, MeasureKind::uniform);
    const double dmax = std::max(g1.max_degree(), g2.max_degree());
    const double lambda = 1.0 / (dmax * dmax);
    const double dense = dense_geometric_kernel(g1, g2, m1, m2, lambda);
    const double cg = cg_geometric(g1, g2, m1, m2, lambda, tight());
    const double fp = fixed_point_geometric(g1, g2, m1, m2, lambda, tight());
    const double series = exact_rwk(g1, g2, m1, m2, geometric_scheme(lambda, 200).mu(), 200);
    CHECK(std::abs(cg - dense) < 1e-9);
    CHECK(std::abs(fp - dense) < 1e-9);
    CHECK(std::abs(series - dense) < 1e-9);
  }
}

TEST_CASE("exact_rwk matches the dense series oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [g1, g2] = labelled_pair(seed + 50, 6);
    const auto m1 = factorized_measure(g1, MeasureKind::uniform);
    const auto m2 = factorized_measure(g2, MeasureKind::ones);
    const auto scheme = exponential_scheme(0.3, 15);
    CHECK(exact_rwk(g1, g2, m1, m2, scheme.mu(), 15) ==
          doctest::Approx(dense_series_kernel(g1, g2, m1, m2, scheme.mu())).epsilon(1e-12));
  }
}

TEST_CASE("property: symmetry, relabelling invariance and monotonicity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [g1, g2] = labelled_pair(seed + 100, 7);
    const auto m1 = factorized_measure(g1, MeasureKind::uniform);
    const auto m2 = factorized_measure(g2, MeasureKind::uniform);
    const auto mu = exponential_scheme(0.2, 20).mu();
    const double k12 = exact_rwk(g1, g2, m1, m2, mu, 20);
    CHECK(exact_rwk(g2, g1, m2, m1, mu, 20) == doctest::Approx(k12).epsilon(1e-13));

    std::vector<VertexId> perm(g1.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937(static_cast<unsigned>(seed)));
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (auto [u, v] : g1.edge_list()) edges.emplace_back(perm[u], perm[v]);
    std::vector<Label> labels(g1.size());
    for (VertexId v = 0; v < g1.size(); ++v) labels[perm[v]] = g1.label(v);
    const Graph permuted(g1.size(), edges, labels, g1.n_labels());
    CHECK(exact_rwk(permuted, g2, m1, m2, mu, 20) == doctest::Approx(k12).epsilon(1e-12));

    double previous = 0.0;
    for (double lambda : {0.0, 0.01, 0.02, 0.04}) {
      const double k = cg_geometric(g1, g2, m1, m2, lambda, tight());
      CHECK(k >= previous);
      previous = k;
    }
  }
}

TEST_CASE("empty product graph") {
  const auto g1 = path_graph(3, {1, 1, 1}), g2 = path_graph(2, {2, 2});
  const auto m1 = factorized_measure(g1, MeasureKind::uniform);
  const auto m2 = factorized_measure(g2, MeasureKind::uniform);
  CHECK(exact_rwk(g1, g2, m1, m2, geometric_scheme(0.1).mu(), 40) == 0.0);
  CHECK(cg_geometric(g1, g2, m1, m2, 0.1) == 0.0);
  CHECK(fixed_point_geometric(g1, g2, m1, m2, 0.1) == 0.0);
  CHECK(naive_product_grf(g1, g2, m1, m2, geometric_scheme(0.1), 5, std::nullopt, 0.3, 1) == 0.0);
}

TEST_CASE("naive product GRF") {
  SUBCASE("delta modulation returns v^T w") {
    const auto [g1, g2] = labelled_pair(7, 5);
    const auto m1 = factorized_measure(g1, MeasureKind::uniform);
    const auto m2 = factorized_measure(g2, MeasureKind::uniform);
    const auto delta = custom_scheme({1, 0, 0, 0});
    const double vw = exact_rwk(g1, g2, m1, m2, delta.mu(), 0);
    CHECK(naive_product_grf(g1, g2, m1, m2, delta, 1, std::nullopt, 0.5, 3) == doctest::Approx(vw).epsilon(1e-14));
  }
  SUBCASE("K2 pair is unbiased") {
    const auto k2 = complete_graph(2);
    const auto m = factorized_measure(k2, MeasureKind::uniform);
    const auto scheme = geometric_scheme(0.1);
    RunningStats stats;
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
      stats.add(naive_product_grf(k2, k2, m, m, scheme, 2, std::nullopt, 0.3, key_hash({4, seed})));
    CHECK(within_standard_errors(stats, 0.25 / 0.9));
  }
  SUBCASE("agrees with the factorized estimator and the exact kernel") {
    const auto [g1, g2] = labelled_pair(9, 6, 0.6);
    const auto m1 = factorized_measure(g1, MeasureKind::uniform);
    const auto m2 = factorized_measure(g2, MeasureKind::uniform);
    const auto scheme = exponential_scheme(0.3);
    const double exact = exact_rwk(g1, g2, m1, m2, scheme.mu(), scheme.truncation());
    WalkConfig cfg;
    cfg.walks = 4;
    cfg.p_halt = 0.3;
    RunningStats naive, gvoys;
    for (std::uint64_t seed = 0; seed < 5000; ++seed) {
      naive.add(naive_product_grf(g1, g2, m1, m2, scheme, 4, 10, 0.3, key_hash({5, seed})));
      gvoys.add(pair_estimate(g1, g2, m1, m2, scheme, cfg, key_hash({6, seed})));
    }
    CHECK(within_standard_errors(naive, exact));
    CHECK(within_standard_errors(gvoys, exact));
    const double joint = std::hypot(naive.standard_error(), gvoys.standard_error());
    CHECK(std::abs(naive.mean() - gvoys.mean()) <= 3.0 * joint);
  }
}

TEST_CASE("memory guard") {
  const auto g = erdos_renyi(30, 0.5, 1);
  const auto m = factorized_measure(g, MeasureKind::uniform);
  ProductLimits small{100, 1u << 20};
  CHECK_THROWS_AS(check_product_limits(g, g, small), MemoryGuardError);
  CHECK_THROWS_AS(exact_rwk(g, g, m, m, geometric_scheme(0.01).mu(), 40, small), MemoryGuardError);
  OracleConfig cfg;
  cfg.limits = {1u << 20, 100};
  CHECK_THROWS_AS(cg_geometric(g, g, m, m, 0.01, cfg), MemoryGuardError);
  CHECK_NOTHROW(check_product_limits(g, g, ProductLimits{}));
}

TEST_CASE("iteration cap reports the residual") {
  const auto g = erdos_renyi(10, 0.5, 2);
  const auto m = factorized_measure(g, MeasureKind::uniform);
  OracleConfig cfg = tight();
  cfg.max_iterations = 1;
  try {
    fixed_point_geometric(g, g, m, m, 0.01, cfg);
    FAIL("expected IterationLimitError");
  } catch (const IterationLimitError& e) {
    CHECK(e.residual() > 0.0);
  }
  CHECK_THROWS_AS(cg_geometric(g, g, m, m, 0.01, cfg), IterationLimitError);
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cg_geometric(g, g, m, m, 0.01, cfg), std::invalid_argument);
}
