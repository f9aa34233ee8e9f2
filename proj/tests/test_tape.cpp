#include <doctest.h>

#include <cmath>

#include "gvoys/tape.hpp"
#include "gvoys/stats.hpp"

using namespace gvoys;

TEST_CASE("tape values are pure functions of their indices") {
  const auto a = make_tape(42, Role::C, 3);
  const auto b = make_tape(42, Role::C, 3);
  for (std::uint32_t l = 0; l < 20; ++l)
    for (std::uint32_t w = 0; w < 20; ++w) {
      CHECK(a.g(l, w) == b.g(l, w));
      CHECK(a.z(2, l, w) == b.z(2, l, w));
      CHECK(a.t(l, w) == b.t(l, w));
      CHECK(a.hop_bits(1, w, l, 5) == b.hop_bits(1, w, l, 5));
    }
}

TEST_CASE("rademacher signs and termination variables") {
  const auto tape = make_tape(7, Role::D, 0);
  RunningStats signs, uniforms;
  for (std::uint32_t l = 0; l < 100; ++l)
    for (std::uint32_t w = 0; w < 100; ++w) {
      const double g = tape.g(l, w), z = tape.z(1, l, w), t = tape.t(l, w);
      CHECK((g == 1.0 || g == -1.0));
      CHECK((z == 1.0 || z == -1.0));
      CHECK(t >= 0.0);
      CHECK(t < 1.0);
      signs.add(g);
      uniforms.add(t);
    }
  CHECK(std::abs(signs.mean()) < 3.0 / 100.0);
  CHECK(std::abs(uniforms.mean() - 0.5) < 3.0 * std::sqrt(1.0 / 12.0) / 100.0);
}

TEST_CASE("C and D tapes are uncorrelated") {
  const auto c = make_tape(11, Role::C, 0);
  const auto d = make_tape(11, Role::D, 0);
  RunningStats product, labels;
  for (std::uint32_t l = 0; l < 100; ++l)
    for (std::uint32_t w = 0; w < 1000; ++w) {
      product.add(c.g(l, w) * d.g(l, w));
      labels.add(c.z(1, l, w) * c.z(2, l, w));
    }
  CHECK(std::abs(product.mean()) < 3.0 / std::sqrt(1e5));
  CHECK(std::abs(labels.mean()) < 3.0 / std::sqrt(1e5));
}

TEST_CASE("gaussian g has unit variance") {
  const auto tape = make_tape(5, Role::C, 0, GDistribution::gaussian);
  RunningStats stats;
  for (std::uint32_t l = 0; l < 200; ++l)
    for (std::uint32_t w = 0; w < 200; ++w) stats.add(tape.g(l, w));
  CHECK(std::abs(stats.mean()) < 3.0 / 200.0);
  // Var of the sample variance is about 2 / n for a normal sample.
  CHECK(std::abs(stats.variance() - 1.0) < 3.0 * std::sqrt(2.0) / 200.0);
}

TEST_CASE("shared mode ignores the walker index") {
  const auto shared = make_tape(9, Role::C, 0, GDistribution::rademacher, SharingMode::shared_across_walkers);
  const auto per_walker = make_tape(9, Role::C, 0);
  bool walkers_differ = false;
  for (std::uint32_t l = 0; l < 10; ++l)
    for (std::uint32_t w = 1; w < 10; ++w) {
      CHECK(shared.g(l, w) == shared.g(l, 0));
      CHECK(shared.z(3, l, w) == shared.z(3, l, 0));
      walkers_differ = walkers_differ || per_walker.g(l, w) != per_walker.g(l, 0);
    }
  CHECK(walkers_differ);
  // Termination stays per walker.
  bool t_differs = false;
  for (std::uint32_t w = 1; w < 10; ++w) t_differs = t_differs || shared.t(0, w) != shared.t(0, 0);
  CHECK(t_differs);
}

TEST_CASE("sign and walk seeds act independently") {
  const RandomTape a(1, 100, Role::C, 0), b(1, 200, Role::C, 0), c(2, 100, Role::C, 0);
  CHECK(a.g(3, 4) == b.g(3, 4));
  CHECK(a.z(1, 3, 4) == b.z(1, 3, 4));
  CHECK(a.t(3, 4) != b.t(3, 4));
  CHECK(a.t(3, 4) == c.t(3, 4));
  CHECK(a.hop_bits(0, 1, 2, 3) != a.hop_bits(1, 1, 2, 3));
}
