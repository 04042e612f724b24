#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/consensus/tendermint.hpp"
#include "fairsim/core/ids.hpp"
#include "fairsim/sim/delay.hpp"

namespace fairsim::fabric {

/// Clients, an m_p-of-n_p endorsing service and a 3f+1 ordering service.
struct Topology {
  std::uint32_t clients = 3;
  std::uint32_t peers = 16;
  std::uint32_t endorsements = 10;  // m_p
  std::uint32_t orderers = 7;
  std::uint32_t orderer_faults = 2;  // f_o

  /// Empty when n_o = 3 f_o + 1, 1 <= m_p <= n_p and n_c >= 1.
  std::vector<std::string> problems() const;
};

/// Input and output delays per role. Every node of a role uses the same
/// distribution on both sides of its interface.
struct DelayProfile {
  sim::DelaySpec client = sim::DelaySpec::uniform(1, 10);
  sim::DelaySpec peer = sim::DelaySpec::uniform(1, 10);
  sim::DelaySpec orderer = sim::DelaySpec::uniform(1, 10);
};

struct PuzzleSchedule {
  Tick reveal_interval = 10;
  sim::DelaySpec solve = sim::DelaySpec::uniform(1, 5);
};

struct NetworkConfig {
  Topology topology;
  DelayProfile delays;
  PuzzleSchedule puzzles;
  consensus::TimeoutConfig timeouts;
  std::size_t max_block_size = 0;
  std::uint32_t proposer_offset = 0;
  Tick horizon = 5000;
  std::uint64_t seed = 1;
  /// f used by the peer-side differential counter; defaults to n_p - m_p.
  std::optional<std::uint32_t> peer_fairness_f;
  bool record_trace = false;

  std::uint32_t peer_f() const {
    return peer_fairness_f.value_or(topology.peers >= topology.endorsements ? topology.peers - topology.endorsements
                                                                             : 0);
  }
};

}  // namespace fairsim::fabric
