#include "fairsim/fairness/score.hpp"

namespace fairsim::fairness {

std::optional<double> compute_score(std::uint64_t wins, std::uint64_t games, std::uint32_t clients) {
  if (games == 0) {
    return std::nullopt;
  }
  return static_cast<double>(wins) / static_cast<double>(games) * clients;
}

bool GameBoard::on_delivered(PuzzleId puzzle, std::uint32_t client) {
  const auto p = raw(puzzle);
  if (p >= winner_by_puzzle_.size()) {
    winner_by_puzzle_.resize(p + 1, -1);
  }
  if (winner_by_puzzle_[p] >= 0) {
    return false;
  }
  winner_by_puzzle_[p] = client;
  ++wins_.at(client);
  ++games_;
  return true;
}

std::optional<double> GameBoard::score(std::uint32_t client) const { return compute_score(wins(client), games_, clients()); }

std::optional<std::uint32_t> GameBoard::winner(PuzzleId puzzle) const {
  const auto p = raw(puzzle);
  if (p >= winner_by_puzzle_.size() || winner_by_puzzle_[p] < 0) {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(winner_by_puzzle_[p]);
}

}  // namespace fairsim::fairness
