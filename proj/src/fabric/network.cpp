#include "fairsim/fabric/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairsim::fabric {

namespace {

enum TraceKind : std::uint8_t { kReveal = 1, kSolution = 2, kTimer = 3, kDeliver = 4 };

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* message_name(const Message& m) {
  switch (m.index()) {
    case 0: return "tx";
    case 1: return "endorsement";
    case 2: return "endorsed-tx";
    default: return "consensus";
  }
}

const sim::DelaySpec& role_delay(const DelayProfile& d, Role role) {
  switch (role) {
    case Role::client: return d.client;
    case Role::peer: return d.peer;
    case Role::orderer: return d.orderer;
  }
  return d.client;
}

}  // namespace

FabricNetwork::FabricNetwork(NetworkConfig config)
    : config_(std::move(config)),
      engine_(config_.seed, config_.horizon),
      peer_log_(Role::peer, config_.topology.peers),
      orderer_log_(Role::orderer, config_.topology.orderers),
      games_(config_.topology.clients) {
  const Topology& t = config_.topology;
  if (auto problems = t.problems(); !problems.empty()) {
    throw std::invalid_argument(problems.front());
  }
  for (const sim::DelaySpec* d : {&config_.delays.client, &config_.delays.peer, &config_.delays.orderer,
                                  &config_.puzzles.solve}) {
    if (auto err = sim::check(*d)) {
      throw std::invalid_argument(*err);
    }
  }
  if (config_.puzzles.reveal_interval == 0 || config_.timeouts.per_phase == 0) {
    throw std::invalid_argument("reveal interval and phase timeout must be positive");
  }

  clients_.resize(t.clients);
  peers_.resize(t.peers);
  client_cond_.resize(t.clients);
  peer_cond_.resize(t.peers);
  orderer_cond_.resize(t.orderers);
  for (std::uint32_t i = 0; i < t.clients; ++i) {
    engine_.add_node(client_id(i), {config_.delays.client, config_.delays.client});
  }
  for (std::uint32_t i = 0; i < t.peers; ++i) {
    engine_.add_node(peer_id(i), {config_.delays.peer, config_.delays.peer});
  }
  orderers_.reserve(t.orderers);
  for (std::uint32_t i = 0; i < t.orderers; ++i) {
    engine_.add_node(orderer_id(i), {config_.delays.orderer, config_.delays.orderer});
    orderers_.emplace_back(consensus::ReplicaConfig{i, t.orderers, config_.timeouts, config_.max_block_size,
                                                    config_.proposer_offset});
  }
}

void FabricNetwork::start() {
  if (started_) {
    throw std::logic_error("network already started");
  }
  started_ = true;
  engine_.schedule(PuzzleReveal{PuzzleId{next_puzzle_++}}, config_.puzzles.reveal_interval);
  for (std::uint32_t i = 0; i < orderers_.size(); ++i) {
    if (!orderer_cond_[i].stopped) {
      emit(i, orderers_[i].start());
    }
  }
}

bool FabricNetwork::step() {
  auto ev = engine_.next();
  if (!ev) {
    return false;
  }
  ++events_;
  const std::uint64_t seq = ev->seq;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, PuzzleReveal>) {
          trace(seq, kReveal, client_id(0), raw(e.puzzle));
          on_reveal(e);
        } else if constexpr (std::is_same_v<T, SolutionReady>) {
          trace(seq, kSolution, client_id(e.client), raw(e.puzzle));
          on_solution(e);
        } else if constexpr (std::is_same_v<T, ConsensusTimer>) {
          trace(seq, kTimer, orderer_id(e.orderer), (e.timeout.height << 8) ^ e.timeout.round);
          on_timer(e);
        } else {
          trace(seq, kDeliver, e.receiver, e.message_id);
          on_deliver(e, seq);
        }
      },
      ev->event);
  return true;
}

void FabricNetwork::run_to_horizon() {
  if (!started_) {
    start();
  }
  while (step()) {
  }
}

void FabricNetwork::trace(std::uint64_t seq, std::uint8_t kind, NodeId node, std::uint64_t detail) {
  const Tick at = engine_.now();
  std::uint64_t h = trace_hash_;
  h = fnv_mix(h, at);
  h = fnv_mix(h, seq);
  h = fnv_mix(h, (static_cast<std::uint64_t>(kind) << 40) | (static_cast<std::uint64_t>(node.role) << 32) | node.index);
  h = fnv_mix(h, detail);
  trace_hash_ = h;
  if (config_.record_trace) {
    trace_.push_back({at, seq, kind, node, detail});
  }
}

NodeCondition& FabricNetwork::condition_mut(NodeId node) {
  switch (node.role) {
    case Role::client: return client_cond_.at(node.index);
    case Role::peer: return peer_cond_.at(node.index);
    case Role::orderer: return orderer_cond_.at(node.index);
  }
  throw std::out_of_range("unknown role");
}

const NodeCondition& FabricNetwork::condition(NodeId node) const {
  return const_cast<FabricNetwork*>(this)->condition_mut(node);
}

void FabricNetwork::send(NodeId from, NodeId to, Message message) {
  const NodeCondition& src = condition(from);
  const NodeCondition& dst = condition(to);
  if (src.stopped || src.skip_output || dst.skip_input) {
    ++dropped_;
    return;
  }
  if (src.listen_output && knowledge_) {
    knowledge_->push_back({engine_.now(), from, std::string("out ") + message_name(message) + " to " + to_string(to)});
  }
  engine_.transmit(from, to, std::move(message), src.extra_output + dst.extra_input);
}

TxId FabricNetwork::register_tx(std::uint32_t client, PuzzleId puzzle, bool forged) {
  const TxId id{txs_.size()};
  txs_.push_back({id, client, puzzle, engine_.now(), forged});
  return id;
}

void FabricNetwork::on_reveal(const PuzzleReveal& ev) {
  for (std::uint32_t c = 0; c < clients_.size(); ++c) {
    if (client_cond_[c].stopped) {
      continue;
    }
    const Tick solve =
        sim::sample_delay(config_.puzzles.solve, engine_.random().stream(client_id(c), sim::StreamPurpose::solve_delay));
    engine_.schedule_in(SolutionReady{c, ev.puzzle}, solve);
  }
  engine_.schedule_in(PuzzleReveal{PuzzleId{next_puzzle_++}}, config_.puzzles.reveal_interval);
}

void FabricNetwork::on_solution(const SolutionReady& ev) {
  if (client_cond_[ev.client].stopped) {
    return;
  }
  const TxId tx = register_tx(ev.client, ev.puzzle, false);
  clients_[ev.client].pending.emplace(raw(tx), PendingTx{});
  for (std::uint32_t p = 0; p < peers_.size(); ++p) {
    send(client_id(ev.client), peer_id(p), SubmitTx{tx, ev.client, ev.puzzle});
  }
}

void FabricNetwork::on_timer(const ConsensusTimer& ev) {
  if (orderer_cond_[ev.orderer].stopped) {
    return;
  }
  emit(ev.orderer, orderers_[ev.orderer].on_timeout(ev.timeout));
}

void FabricNetwork::on_deliver(const sim::Envelope<Message>& env, std::uint64_t seq) {
  const NodeCondition& dst = condition(env.receiver);
  if (dst.stopped || dst.skip_input) {
    ++dropped_;
    return;
  }
  if (dst.listen_input && knowledge_) {
    knowledge_->push_back({engine_.now(), env.receiver,
                           std::string("in ") + message_name(env.payload) + " from " + to_string(env.sender)});
  }
  const std::uint32_t at = env.receiver.index;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SubmitTx>) {
          if (env.receiver.role == Role::peer) {
            peer_on_transaction(at, m, seq);
          }
        } else if constexpr (std::is_same_v<T, Endorsement>) {
          if (env.receiver.role == Role::client) {
            client_on_endorsement(at, m);
          }
        } else if constexpr (std::is_same_v<T, EndorsedTransaction>) {
          if (env.receiver.role == Role::orderer) {
            orderer_on_endorsed(at, m, seq);
          }
        } else {
          if (env.receiver.role == Role::orderer) {
            orderer_on_consensus(at, m.message);
          }
        }
      },
      env.payload);
}

void FabricNetwork::peer_on_transaction(std::uint32_t peer, const SubmitTx& tx, std::uint64_t seq) {
  PeerState& state = peers_[peer];
  if (!state.seen.insert(raw(tx.tx)).second) {
    return;
  }
  peer_log_.record(peer, tx.tx, engine_.now(), seq);
  if (state.sabotage.refuse_clients.contains(tx.client)) {
    return;
  }
  send(peer_id(peer), client_id(tx.client), Endorsement{tx.tx, peer});
}

void FabricNetwork::client_on_endorsement(std::uint32_t client, const Endorsement& e) {
  ClientState& state = clients_[client];
  auto it = state.pending.find(raw(e.tx));
  if (it == state.pending.end() || it->second.broadcast) {
    return;
  }
  it->second.endorsers.insert(e.peer);
  if (it->second.endorsers.size() < config_.topology.endorsements) {
    return;
  }
  it->second.broadcast = true;
  ++state.endorsed;
  const Transaction& t = txs_.at(raw(e.tx));
  EndorsedTransaction etx{t.tx, client, t.puzzle,
                          std::vector<std::uint32_t>(it->second.endorsers.begin(), it->second.endorsers.end())};
  for (std::uint32_t o = 0; o < orderers_.size(); ++o) {
    send(client_id(client), orderer_id(o), etx);
  }
}

void FabricNetwork::orderer_on_endorsed(std::uint32_t orderer, const EndorsedTransaction& etx, std::uint64_t seq) {
  std::vector<std::uint32_t> endorsers = etx.endorsers;
  std::sort(endorsers.begin(), endorsers.end());
  endorsers.erase(std::unique(endorsers.begin(), endorsers.end()), endorsers.end());
  const bool valid = endorsers.size() >= config_.topology.endorsements &&
                     (endorsers.empty() || endorsers.back() < config_.topology.peers);
  if (!valid) {
    ++rejected_endorsed_;
    return;
  }
  orderer_log_.record(orderer, etx.tx, engine_.now(), seq);
  orderers_[orderer].mempool().add({etx.tx, etx.client});
}

void FabricNetwork::orderer_on_consensus(std::uint32_t orderer, const consensus::Message& msg) {
  emit(orderer, orderers_[orderer].on_message(msg));
}

void FabricNetwork::emit(std::uint32_t orderer, consensus::Outputs&& out) {
  for (const consensus::Commit& c : out.commits) {
    deliver_block(c);
  }
  for (consensus::Message& m : out.broadcast) {
    for (std::uint32_t o = 0; o < orderers_.size(); ++o) {
      if (o != orderer) {
        send(orderer_id(orderer), orderer_id(o), ConsensusPayload{m});
      }
    }
  }
  for (const consensus::Timeout& t : out.timers) {
    engine_.schedule_in(ConsensusTimer{orderer, t}, config_.timeouts.per_phase);
  }
}

void FabricNetwork::deliver_block(const consensus::Commit& commit) {
  const std::uint64_t h = commit.block->height();
  if (h <= ledger_.height()) {
    if (ledger_.at_height(h).block->id != commit.block->id) {
      ++agreement_violations_;
    }
    return;
  }
  ledger_.append(commit.block, engine_.now(), commit.certificate);
  for (consensus::Replica& r : orderers_) {
    r.mempool().mark_delivered(*commit.block);
  }
  bool resolved = false;
  for (const consensus::BlockTx& t : commit.block->txs) {
    const Transaction& tx = txs_.at(raw(t.tx));
    resolved = games_.on_delivered(tx.puzzle, tx.client) || resolved;
  }
  if (resolved || series_.empty()) {
    series_.push_back({engine_.now(), games_.games(), games_.all_wins()});
  }
}

std::vector<bool> FabricNetwork::honest(Role role) const {
  const std::vector<NodeCondition>& conds =
      role == Role::client ? client_cond_ : role == Role::peer ? peer_cond_ : orderer_cond_;
  std::vector<bool> out(conds.size());
  for (std::size_t i = 0; i < conds.size(); ++i) {
    out[i] = !conds[i].injected && !conds[i].stopped;
  }
  return out;
}

std::uint32_t FabricNetwork::injected_count(Role role) const {
  const std::vector<NodeCondition>& conds =
      role == Role::client ? client_cond_ : role == Role::peer ? peer_cond_ : orderer_cond_;
  return static_cast<std::uint32_t>(
      std::count_if(conds.begin(), conds.end(), [](const NodeCondition& c) { return c.injected; }));
}

Tick FabricNetwork::baseline_transit(const adversary::AdversarialAction& action) const {
  const NodeId n = action.target;
  const Tick own = role_delay(config_.delays, n.role).upper_bound();
  // Worst counterpart the node talks to.
  Tick other = 0;
  switch (n.role) {
    case Role::client:
      other = std::max(config_.delays.peer.upper_bound(), config_.delays.orderer.upper_bound());
      break;
    case Role::peer: other = config_.delays.client.upper_bound(); break;
    case Role::orderer:
      other = std::max(config_.delays.client.upper_bound(), config_.delays.orderer.upper_bound());
      break;
  }
  return own + other;
}

void FabricNetwork::check_action(const adversary::AdversarialAction& action) const {
  using adversary::ActionKind;
  const NodeId n = action.target;
  const Topology& t = config_.topology;
  const std::uint32_t count = n.role == Role::client ? t.clients : n.role == Role::peer ? t.peers : t.orderers;
  if (n.index >= count) {
    throw std::invalid_argument("no such node: " + to_string(n));
  }
  for (std::uint32_t c : action.clients) {
    if (c >= t.clients) {
      throw std::invalid_argument("no such client: " + std::to_string(c));
    }
  }
  if (action.kind == ActionKind::inject && !action.behavior.empty()) {
    const std::string& b = action.behavior;
    const bool ok = (b == adversary::behavior::kRefuseEndorsement && n.role == Role::peer) ||
                    ((b == adversary::behavior::kOmitFromProposals || b == adversary::behavior::kWithholdVotes) &&
                     n.role == Role::orderer);
    if (!ok) {
      throw adversary::UnknownBehavior("behavior '" + b + "' is not defined for " + to_string(n));
    }
  }
  if (action.kind == ActionKind::send) {
    if (action.message != "tx") {
      throw adversary::UnknownBehavior("cannot forge message '" + action.message + "'");
    }
    if (n.role != Role::peer || action.forged_sender.role != Role::client || action.forged_sender.index >= t.clients) {
      throw std::invalid_argument("forged tx must go from a client to a peer");
    }
  }
}

std::string FabricNetwork::snapshot(NodeId node) const {
  switch (node.role) {
    case Role::client: {
      const ClientState& c = clients_.at(node.index);
      return "pending=" + std::to_string(c.pending.size()) + " endorsed=" + std::to_string(c.endorsed);
    }
    case Role::peer: return "seen=" + std::to_string(peers_.at(node.index).seen.size());
    case Role::orderer: {
      const consensus::Replica& r = orderers_.at(node.index);
      return "height=" + std::to_string(r.height()) + " round=" + std::to_string(r.round()) +
             " step=" + consensus::to_string(r.step()) + " mempool=" + std::to_string(r.mempool().size());
    }
  }
  return {};
}

void FabricNetwork::apply_action(const adversary::AdversarialAction& action, adversary::KnowledgeLog& knowledge) {
  using adversary::ActionKind;
  check_action(action);
  knowledge_ = &knowledge;
  NodeCondition& cond = condition_mut(action.target);
  const bool in = adversary::covers_input(action.direction);
  const bool out = adversary::covers_output(action.direction);
  switch (action.kind) {
    case ActionKind::reveal:
      knowledge.push_back({engine_.now(), action.target, snapshot(action.target)});
      break;
    case ActionKind::listen:
      cond.listen_input = cond.listen_input || in;
      cond.listen_output = cond.listen_output || out;
      break;
    case ActionKind::send: {
      const PuzzleId puzzle{action.message_arg};
      const TxId tx = register_tx(action.forged_sender.index, puzzle, true);
      const NodeCondition& dst = condition(action.target);
      engine_.transmit(action.forged_sender, action.target, Message{SubmitTx{tx, action.forged_sender.index, puzzle}},
                       dst.extra_input);
      break;
    }
    case ActionKind::delay:
      if (in) cond.extra_input += action.delta;
      if (out) cond.extra_output += action.delta;
      break;
    case ActionKind::skip:
      cond.skip_input = cond.skip_input || in;
      cond.skip_output = cond.skip_output || out;
      break;
    case ActionKind::stop: cond.stopped = true; break;
    case ActionKind::inject: {
      cond.injected = true;
      const std::set<std::uint32_t> clients(action.clients.begin(), action.clients.end());
      const std::string& b = action.behavior;
      if (b == adversary::behavior::kRefuseEndorsement) {
        peers_[action.target.index].sabotage.refuse_clients.insert(clients.begin(), clients.end());
      } else if (b == adversary::behavior::kOmitFromProposals || b == adversary::behavior::kWithholdVotes) {
        consensus::Replica& r = orderers_[action.target.index];
        consensus::OrdererSabotage s = r.sabotage();
        s.omit_when_proposing.insert(clients.begin(), clients.end());
        if (b == adversary::behavior::kWithholdVotes) {
          s.withhold_votes_for.insert(clients.begin(), clients.end());
        }
        r.set_sabotage(std::move(s));
      }
      break;
    }
  }
}

fairness::FairnessReport FabricNetwork::report() const {
  fairness::FairnessReport r;
  r.clients = games_.clients();
  r.games = games_.games();
  r.wins = games_.all_wins();

  std::vector<fairness::TxInfo> infos;
  infos.reserve(txs_.size());
  for (const Transaction& t : txs_) {
    if (!t.forged) {
      infos.push_back({t.tx, t.client, t.puzzle});
    }
  }
  const auto pairs = fairness::competing_pairs(infos);
  r.peers = fairness::count_violations(peer_log_, pairs, ledger_.delivery(), honest(Role::peer), config_.peer_f());
  r.orderers = fairness::count_violations(orderer_log_, pairs, ledger_.delivery(), honest(Role::orderer),
                                          config_.topology.orderer_faults);
  return r;
}

}  // namespace fairsim::fabric
