#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "fairsim/consensus/block.hpp"
#include "fairsim/core/ids.hpp"

namespace fairsim::consensus {

enum class Step : std::uint8_t { propose, prevote, precommit };
enum class VoteKind : std::uint8_t { prevote, precommit };

std::string to_string(Step step);

struct Proposal {
  BlockPtr block;
  std::uint64_t height = 0;
  std::uint32_t round = 0;
  std::uint32_t proposer = 0;
};

struct Vote {
  VoteKind kind = VoteKind::prevote;
  std::uint64_t height = 0;
  std::uint32_t round = 0;
  std::optional<BlockId> value;  // nullopt is a nil vote
  std::uint32_t voter = 0;
};

/// Sent by an orderer after it commits a block. Lagging orderers adopt the
/// block directly; `certificate` is the number of matching precommits the
/// original committer saw.
struct CommitAnnouncement {
  BlockPtr block;
  std::uint32_t certificate = 0;
  std::uint32_t from = 0;
};

using Message = std::variant<Proposal, Vote, CommitAnnouncement>;

struct Timeout {
  std::uint64_t height = 0;
  std::uint32_t round = 0;
  Step step = Step::propose;
};

struct TimeoutConfig {
  Tick per_phase = 25;
};

/// Installed on an orderer by an `inject` action.
struct OrdererSabotage {
  std::set<std::uint32_t> omit_when_proposing;
  std::set<std::uint32_t> withhold_votes_for;

  bool active() const { return !omit_when_proposing.empty() || !withhold_votes_for.empty(); }
};

struct Commit {
  BlockPtr block;
  std::uint32_t certificate = 0;
  bool adopted = false;  // learned from an announcement rather than from votes
};

/// Everything a replica asks its environment to do after handling an input.
struct Outputs {
  std::vector<Message> broadcast;
  std::vector<Timeout> timers;  // each fires after TimeoutConfig::per_phase
  std::vector<Commit> commits;
};

/// Round-robin proposer rotation over (height + round + offset).
std::uint32_t proposer_for(std::uint64_t height, std::uint32_t round, std::uint32_t n, std::uint32_t offset = 0);

constexpr std::uint32_t byzantine_threshold(std::uint32_t n) { return n == 0 ? 0 : (n - 1) / 3; }
constexpr std::uint32_t quorum_size(std::uint32_t n) { return 2 * byzantine_threshold(n) + 1; }

struct ReplicaConfig {
  std::uint32_t index = 0;
  std::uint32_t n = 4;
  TimeoutConfig timeouts;
  std::size_t max_block_size = 0;  // 0: whole mempool
  std::uint32_t proposer_offset = 0;
};

/// One orderer's Tendermint state machine: PROPOSE, PREVOTE, PRECOMMIT with
/// 2f+1 quorums, per-phase timeouts and nil votes. A replica that precommits
/// a block locks on it and re-proposes it at the same height; a later-round
/// polka for another block moves the lock.
class Replica {
 public:
  explicit Replica(ReplicaConfig config);

  Outputs start();
  Outputs on_message(const Message& message);
  Outputs on_timeout(const Timeout& timeout);

  void set_sabotage(OrdererSabotage sabotage) { sabotage_ = std::move(sabotage); }
  const OrdererSabotage& sabotage() const { return sabotage_; }

  Mempool& mempool() { return mempool_; }
  const Mempool& mempool() const { return mempool_; }

  std::uint64_t height() const { return height_; }
  std::uint32_t round() const { return round_; }
  Step step() const { return step_; }
  std::uint32_t index() const { return config_.index; }
  const std::vector<Commit>& committed() const { return committed_; }
  std::uint64_t timeouts_fired() const { return timeouts_fired_; }

  /// Builds what this replica would propose right now.
  BlockPtr build_proposal(std::uint32_t round) const;

 private:
  struct RoundVotes {
    std::map<std::uint32_t, std::optional<BlockId>> prevotes;
    std::map<std::uint32_t, std::optional<BlockId>> precommits;
  };

  void start_round(std::uint32_t round, Outputs& out);
  void handle(const Message& message, Outputs& out);
  void handle_proposal(const Proposal& p, Outputs& out);
  void handle_vote(const Vote& v, Outputs& out);
  void handle_announcement(const CommitAnnouncement& a, Outputs& out);

  void prevote(BlockPtr block, Outputs& out);
  void precommit(std::optional<BlockId> value, Outputs& out);
  void cast(VoteKind kind, std::optional<BlockId> value, Outputs& out);
  bool record(const Vote& v);

  void check_prevotes(Outputs& out);
  void check_precommits(std::uint32_t round, Outputs& out);
  void update_lock(std::uint32_t round);
  void commit(BlockPtr block, std::uint32_t certificate, bool adopted, Outputs& out);

  bool withholds(const Block& block) const;
  BlockPtr known_block(const BlockId& id) const;

  ReplicaConfig config_;
  OrdererSabotage sabotage_;
  Mempool mempool_;

  std::uint64_t height_ = 1;
  std::uint32_t round_ = 0;
  Step step_ = Step::propose;
  BlockPtr locked_;
  std::optional<std::uint32_t> lock_round_;

  std::map<std::uint32_t, BlockPtr> proposals_;      // by round, current height
  std::map<BlockId, BlockPtr> blocks_;               // seen at current height
  std::map<std::uint32_t, RoundVotes> votes_;        // by round, current height
  std::map<std::uint64_t, std::vector<Message>> future_;

  std::vector<Commit> committed_;
  std::uint64_t timeouts_fired_ = 0;
};

}  // namespace fairsim::consensus
