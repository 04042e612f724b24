#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace fairsim {

/// Simulation time, in ticks.
using Tick = std::uint64_t;

enum class Role : std::uint8_t { client, peer, orderer };

/// A process of the simulated system, identified by its role and its index
/// within that role.
struct NodeId {
  Role role = Role::client;
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

constexpr NodeId client_id(std::uint32_t i) { return {Role::client, i}; }
constexpr NodeId peer_id(std::uint32_t i) { return {Role::peer, i}; }
constexpr NodeId orderer_id(std::uint32_t i) { return {Role::orderer, i}; }

enum class TxId : std::uint64_t {};
enum class PuzzleId : std::uint64_t {};

constexpr std::uint64_t raw(TxId id) { return static_cast<std::uint64_t>(id); }
constexpr std::uint64_t raw(PuzzleId id) { return static_cast<std::uint64_t>(id); }

std::string to_string(Role role);
std::string to_string(NodeId node);

/// Parses "client/2", "peer/0", "orderer/5". Throws std::invalid_argument.
NodeId parse_node_id(const std::string& text);

}  // namespace fairsim

template <>
struct std::hash<fairsim::NodeId> {
  std::size_t operator()(const fairsim::NodeId& n) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(n.role) << 32) | n.index);
  }
};
