#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fairsim/adversary/adversary.hpp"
#include "fairsim/consensus/tendermint.hpp"
#include "fairsim/fabric/ledger.hpp"
#include "fairsim/fabric/messages.hpp"
#include "fairsim/fabric/topology.hpp"
#include "fairsim/fairness/reception_log.hpp"
#include "fairsim/fairness/score.hpp"
#include "fairsim/sim/engine.hpp"

namespace fairsim::fabric {

/// One executed event, for trace comparison.
struct TraceEntry {
  Tick at = 0;
  std::uint64_t seq = 0;
  std::uint8_t kind = 0;
  NodeId node;
  std::uint64_t detail = 0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Installed on a peer by an `inject` action.
struct PeerSabotage {
  std::set<std::uint32_t> refuse_clients;
};

/// Whatever the adversary has done to a node so far.
struct NodeCondition {
  bool stopped = false;
  bool injected = false;
  bool skip_input = false;
  bool skip_output = false;
  bool listen_input = false;
  bool listen_output = false;
  Tick extra_input = 0;
  Tick extra_output = 0;
};

/// The simulated system η: clients solving puzzles, peers endorsing, orderers
/// running Tendermint over endorsed transactions. Each call to step() is one
/// `exec` transition; adversarial actions arrive through ActionTarget.
class FabricNetwork final : public adversary::ActionTarget {
 public:
  explicit FabricNetwork(NetworkConfig config);

  /// Schedules the first puzzle and starts every live orderer at height 1.
  void start();
  /// Executes the next event. False once the queue is empty or the next
  /// event is past the horizon.
  bool step();
  std::optional<Tick> next_event_tick() const { return engine_.peek_tick(); }
  void run_to_horizon();
  /// Advances the clock with no event executed, e.g. to fire a planned
  /// action at its trigger tick.
  void advance_to(Tick t) { engine_.advance_to(t); }

  // adversary::ActionTarget
  Tick now() const override { return engine_.now(); }
  Tick baseline_transit(const adversary::AdversarialAction& action) const override;
  void check_action(const adversary::AdversarialAction& action) const override;
  void apply_action(const adversary::AdversarialAction& action, adversary::KnowledgeLog& knowledge) override;

  const NetworkConfig& config() const { return config_; }
  const Ledger& ledger() const { return ledger_; }
  const fairness::GameBoard& games() const { return games_; }
  const fairness::ReceptionLog& peer_log() const { return peer_log_; }
  const fairness::ReceptionLog& orderer_log() const { return orderer_log_; }
  const std::vector<Transaction>& transactions() const { return txs_; }
  const std::vector<fairness::ScorePoint>& score_series() const { return series_; }
  const consensus::Replica& orderer(std::uint32_t i) const { return orderers_.at(i); }
  const NodeCondition& condition(NodeId node) const;

  /// Nodes of `role` that are neither injected nor stopped.
  std::vector<bool> honest(Role role) const;
  std::uint32_t injected_count(Role role) const;

  /// Transactions of `client` that gathered m_p endorsements.
  std::uint64_t endorsed_count(std::uint32_t client) const { return clients_.at(client).endorsed; }
  std::uint64_t dropped_messages() const { return dropped_; }
  std::uint64_t rejected_endorsed() const { return rejected_endorsed_; }
  /// Local commits that disagreed with the ledger at the same height.
  std::uint64_t agreement_violations() const { return agreement_violations_; }

  std::uint64_t trace_hash() const { return trace_hash_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  std::uint64_t events_executed() const { return events_; }

  fairness::FairnessReport report() const;

 private:
  struct PendingTx {
    std::set<std::uint32_t> endorsers;
    bool broadcast = false;
  };
  struct ClientState {
    std::unordered_map<std::uint64_t, PendingTx> pending;
    std::uint64_t endorsed = 0;
  };
  struct PeerState {
    std::unordered_set<std::uint64_t> seen;
    PeerSabotage sabotage;
  };

  NodeCondition& condition_mut(NodeId node);
  void send(NodeId from, NodeId to, Message message);
  void trace(std::uint64_t seq, std::uint8_t kind, NodeId node, std::uint64_t detail);

  void on_reveal(const PuzzleReveal& ev);
  void on_solution(const SolutionReady& ev);
  void on_timer(const ConsensusTimer& ev);
  void on_deliver(const sim::Envelope<Message>& env, std::uint64_t seq);

  void peer_on_transaction(std::uint32_t peer, const SubmitTx& tx, std::uint64_t seq);
  void client_on_endorsement(std::uint32_t client, const Endorsement& e);
  void orderer_on_endorsed(std::uint32_t orderer, const EndorsedTransaction& etx, std::uint64_t seq);
  void orderer_on_consensus(std::uint32_t orderer, const consensus::Message& msg);
  void emit(std::uint32_t orderer, consensus::Outputs&& out);
  void deliver_block(const consensus::Commit& commit);

  TxId register_tx(std::uint32_t client, PuzzleId puzzle, bool forged);
  std::string snapshot(NodeId node) const;

  NetworkConfig config_;
  sim::Engine<Event> engine_;
  std::vector<ClientState> clients_;
  std::vector<PeerState> peers_;
  std::vector<consensus::Replica> orderers_;
  std::vector<NodeCondition> client_cond_;
  std::vector<NodeCondition> peer_cond_;
  std::vector<NodeCondition> orderer_cond_;

  std::vector<Transaction> txs_;
  fairness::ReceptionLog peer_log_;
  fairness::ReceptionLog orderer_log_;
  Ledger ledger_;
  fairness::GameBoard games_;
  std::vector<fairness::ScorePoint> series_;
  std::uint64_t next_puzzle_ = 1;
  bool started_ = false;

  std::uint64_t dropped_ = 0;
  std::uint64_t rejected_endorsed_ = 0;
  std::uint64_t agreement_violations_ = 0;
  std::uint64_t events_ = 0;
  std::uint64_t trace_hash_ = 0xcbf29ce484222325ULL;
  std::vector<TraceEntry> trace_;
  adversary::KnowledgeLog* knowledge_ = nullptr;
};

}  // namespace fairsim::fabric
