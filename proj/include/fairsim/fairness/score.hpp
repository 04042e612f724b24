#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairsim/core/ids.hpp"
#include "fairsim/fairness/order_fairness.hpp"

namespace fairsim::fairness {

/// wins / g * n_c; absent while no game is resolved.
std::optional<double> compute_score(std::uint64_t wins, std::uint64_t games, std::uint32_t clients);

/// Puzzle competition bookkeeping: the first delivered solution of a puzzle
/// wins it, and later solutions change nothing.
class GameBoard {
 public:
  explicit GameBoard(std::uint32_t clients) : wins_(clients, 0) {}

  /// Feeds one delivered transaction; returns true if it resolved a game.
  bool on_delivered(PuzzleId puzzle, std::uint32_t client);

  std::uint64_t games() const { return games_; }
  std::uint32_t clients() const { return static_cast<std::uint32_t>(wins_.size()); }
  std::uint64_t wins(std::uint32_t client) const { return wins_.at(client); }
  const std::vector<std::uint64_t>& all_wins() const { return wins_; }
  std::optional<double> score(std::uint32_t client) const;
  std::optional<std::uint32_t> winner(PuzzleId puzzle) const;

 private:
  std::vector<std::uint64_t> wins_;
  std::vector<std::int64_t> winner_by_puzzle_;  // -1 unresolved
  std::uint64_t games_ = 0;
};

struct ScorePoint {
  Tick at = 0;
  std::uint64_t games = 0;
  std::vector<std::uint64_t> wins;
};

/// End-of-run metrics for one simulation.
struct FairnessReport {
  std::uint32_t clients = 0;
  std::uint64_t games = 0;
  std::vector<std::uint64_t> wins;
  RoleViolations peers;
  RoleViolations orderers;

  std::optional<double> score(std::uint32_t client) const { return compute_score(wins.at(client), games, clients); }
};

}  // namespace fairsim::fairness
