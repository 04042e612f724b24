#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "fairsim/core/ids.hpp"

namespace fairsim::sim {

using Rng = std::mt19937_64;

/// What a substream is used for. Each (node, purpose) pair owns an
/// independent generator, so adding a node or a draw site does not shift the
/// draws seen by any other node.
enum class StreamPurpose : std::uint8_t { output_delay, input_delay, solve_delay, environment };

std::uint64_t splitmix64(std::uint64_t x);

class RandomStreams {
 public:
  explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}

  Rng& stream(NodeId node, StreamPurpose purpose);
  /// Substream not attached to any node.
  Rng& global(StreamPurpose purpose);

  std::uint64_t seed() const { return seed_; }

 private:
  Rng& lookup(std::uint64_t key);

  std::uint64_t seed_;
  std::map<std::uint64_t, Rng> streams_;
};

/// Seed for point `index` of a sweep rooted at `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace fairsim::sim
