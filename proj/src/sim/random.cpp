#include "fairsim/sim/random.hpp"

namespace fairsim::sim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t stream_key(NodeId node, StreamPurpose purpose) {
  // role:8 | purpose:8 | index:32, with bit 63 clear for node streams.
  return (static_cast<std::uint64_t>(node.role) << 48) | (static_cast<std::uint64_t>(purpose) << 40) | node.index;
}

}  // namespace

Rng& RandomStreams::stream(NodeId node, StreamPurpose purpose) { return lookup(stream_key(node, purpose)); }

Rng& RandomStreams::global(StreamPurpose purpose) {
  return lookup((1ULL << 63) | (static_cast<std::uint64_t>(purpose) << 40));
}

Rng& RandomStreams::lookup(std::uint64_t key) {
  auto it = streams_.find(key);
  if (it == streams_.end()) {
    const std::uint64_t mixed = splitmix64(seed_ ^ splitmix64(key));
    std::seed_seq seq{static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32),
                      static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    it = streams_.emplace(key, Rng(seq)).first;
  }
  return it->second;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) + index);
}

}  // namespace fairsim::sim
