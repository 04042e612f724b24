#pragma once

// Deliberately naive reference for the order-fairness counters. It reads the
// raw reception lists and ledger blocks and rescans them for every question,
// sharing no code with the rank-matrix implementation.

#include <cstdint>
#include <vector>

#include "fairsim/fabric/network.hpp"
#include "fairsim/fairness/order_fairness.hpp"

namespace oracle {

struct TxRecord {
  std::uint64_t tx = 0;
  std::uint32_t client = 0;
  std::uint64_t puzzle = 0;
};

struct Counts {
  std::uint64_t receive = 0;
  std::uint64_t block = 0;
  std::uint64_t differential = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

/// receptions[node] lists tx ids in the order the node received them;
/// blocks[h] lists the tx ids of the (h+1)-th delivered block in order.
Counts brute_force(const std::vector<std::vector<std::uint64_t>>& receptions,
                   const std::vector<std::vector<std::uint64_t>>& blocks, const std::vector<TxRecord>& txs,
                   const std::vector<bool>& honest, std::uint32_t f);

/// Runs the oracle against a finished network, for peers and orderers.
Counts peers(const fairsim::fabric::FabricNetwork& net);
Counts orderers(const fairsim::fabric::FabricNetwork& net);

inline bool matches(const Counts& c, const fairsim::fairness::RoleViolations& v) {
  return c.receive == v.receive && c.block == v.block && c.differential == v.differential;
}

}  // namespace oracle
