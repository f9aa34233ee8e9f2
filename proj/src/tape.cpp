#include "gvoys/tape.hpp"

#include <cmath>
#include <numbers>

#include "gvoys/random.hpp"

namespace gvoys {

namespace {

enum Kind : std::uint64_t { kG = 1, kZ = 2, kT = 3, kHop = 4, kGaussAngle = 5 };

}  // namespace

RandomTape::RandomTape(std::uint64_t sign_seed, std::uint64_t walk_seed, Role role,
                       std::uint32_t block, GDistribution g_distribution, SharingMode sharing)
    : sign_key_(key_hash({sign_seed, 0x7369676eULL, static_cast<std::uint64_t>(role), block})),
      walk_key_(key_hash({walk_seed, 0x77616c6bULL, static_cast<std::uint64_t>(role), block})),
      role_(role),
      block_(block),
      g_distribution_(g_distribution),
      sharing_(sharing) {}

double RandomTape::g(std::uint32_t step, std::uint32_t walker) const {
  const std::uint32_t w = sign_walker(walker);
  const auto bits = key_hash({sign_key_, kG, step, w});
  if (g_distribution_ == GDistribution::rademacher) return to_sign(bits);
  // Box-Muller; the radius uses 1 - u so the logarithm stays finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - to_unit(bits)));
  const double angle = 2.0 * std::numbers::pi * to_unit(key_hash({sign_key_, kGaussAngle, step, w}));
  return radius * std::cos(angle);
}

double RandomTape::z(Label label, std::uint32_t step, std::uint32_t walker) const {
  return to_sign(key_hash({sign_key_, kZ, label, step, sign_walker(walker)}));
}

double RandomTape::t(std::uint32_t step, std::uint32_t walker) const {
  return to_unit(key_hash({walk_key_, kT, step, walker}));
}

std::uint64_t RandomTape::hop_base(std::uint64_t stream, std::uint32_t walker, VertexId start) const {
  return key_hash({walk_key_, kHop, stream, walker, start});
}

RandomTape make_tape(std::uint64_t seed, Role role, std::uint32_t block, GDistribution g_distribution,
                     SharingMode sharing) {
  return RandomTape(seed, seed, role, block, g_distribution, sharing);
}

}  // namespace gvoys
