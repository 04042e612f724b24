#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fairsim/core/ids.hpp"

namespace fairsim::fairness {

struct Reception {
  TxId tx{};
  Tick at = 0;
  std::uint64_t seq = 0;  // engine sequence number of the delivery event
};

/// Per-node reception order for one role. Peers log raw transactions,
/// orderers log endorsed ones. Each node logs a transaction at most once, and
/// its list is strictly ordered by (tick, seq).
class ReceptionLog {
 public:
  ReceptionLog(Role role, std::uint32_t nodes);

  /// False (and nothing recorded) if the node already logged `tx`. Throws
  /// std::logic_error if (at, seq) does not extend the node's order.
  bool record(std::uint32_t node, TxId tx, Tick at, std::uint64_t seq);

  const std::vector<Reception>& of(std::uint32_t node) const { return nodes_.at(node); }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  Role role() const { return role_; }

  /// Position of `tx` in the node's reception order, if received.
  std::optional<std::uint32_t> rank(std::uint32_t node, TxId tx) const;

 private:
  Role role_;
  std::vector<std::vector<Reception>> nodes_;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> ranks_;
};

/// Where a delivered transaction sits in the total delivery order.
struct Position {
  std::uint64_t height = 0;
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

class DeliveryIndex {
 public:
  /// Throws std::logic_error if `tx` was already delivered.
  void add(TxId tx, Position pos);
  std::optional<Position> find(TxId tx) const;
  std::size_t size() const { return positions_.size(); }

 private:
  std::unordered_map<std::uint64_t, Position> positions_;
};

}  // namespace fairsim::fairness
