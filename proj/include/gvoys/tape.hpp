#pragma once

#include <cstdint>

#include "gvoys/graph.hpp"
#include "gvoys/random.hpp"

namespace gvoys {

/// Which of the two independent feature matrices a tape drives.
enum class Role : std::uint8_t { C = 0, D = 1 };

enum class GDistribution { rademacher, gaussian };

/// per_walker: every walker w has its own g and z sequence.
/// shared_across_walkers: g and z ignore the walker index.
enum class SharingMode { per_walker, shared_across_walkers };

/// Lazily evaluated random variables for one (role, block) of the sampler.
///
/// Every value is a pure function of the seeds and its indices. g and z come
/// from `sign_seed`; termination variables and neighbor choices come from
/// `walk_seed`. The two usually coincide; holding the signs fixed while the
/// walks vary gives the conditional regime of the concentration study.
class RandomTape {
 public:
  RandomTape(std::uint64_t sign_seed, std::uint64_t walk_seed, Role role, std::uint32_t block,
             GDistribution g_distribution = GDistribution::rademacher,
             SharingMode sharing = SharingMode::per_walker);

  /// Length sign for step l of walker w.
  double g(std::uint32_t step, std::uint32_t walker) const;
  /// Label sign for `label` at step l of walker w. Always Rademacher.
  double z(Label label, std::uint32_t step, std::uint32_t walker) const;
  /// Termination variable in [0, 1), shared by every graph and start vertex.
  double t(std::uint32_t step, std::uint32_t walker) const;
  /// Raw bits for the neighbor choice at `step` of the walk of `walker` from
  /// `start` on the graph identified by `stream`.
  std::uint64_t hop_bits(std::uint64_t stream, std::uint32_t walker, VertexId start,
                         std::uint32_t step) const {
    return hop_step(hop_base(stream, walker, start), step);
  }
  /// hop_bits split into a per-walk key and a cheap per-step derivation.
  std::uint64_t hop_base(std::uint64_t stream, std::uint32_t walker, VertexId start) const;
  static std::uint64_t hop_step(std::uint64_t base, std::uint32_t step) {
    return splitmix64(splitmix64(base + step));
  }

  Role role() const { return role_; }
  std::uint32_t block() const { return block_; }
  GDistribution g_distribution() const { return g_distribution_; }
  SharingMode sharing() const { return sharing_; }

 private:
  std::uint32_t sign_walker(std::uint32_t walker) const {
    return sharing_ == SharingMode::shared_across_walkers ? 0u : walker;
  }

  std::uint64_t sign_key_;
  std::uint64_t walk_key_;
  Role role_;
  std::uint32_t block_;
  GDistribution g_distribution_;
  SharingMode sharing_;
};

RandomTape make_tape(std::uint64_t seed, Role role, std::uint32_t block,
                     GDistribution g_distribution = GDistribution::rademacher,
                     SharingMode sharing = SharingMode::per_walker);

}  // namespace gvoys
