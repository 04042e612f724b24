#include "fairsim/consensus/tendermint.hpp"

#include <stdexcept>

namespace fairsim::consensus {

std::string to_string(Step step) {
  switch (step) {
    case Step::propose: return "propose";
    case Step::prevote: return "prevote";
    case Step::precommit: return "precommit";
  }
  return "unknown";
}

std::uint32_t proposer_for(std::uint64_t height, std::uint32_t round, std::uint32_t n, std::uint32_t offset) {
  return static_cast<std::uint32_t>((height + round + offset) % n);
}

namespace {

struct Tally {
  std::map<BlockId, std::uint32_t> per_block;
  std::uint32_t nil = 0;
};

Tally tally(const std::map<std::uint32_t, std::optional<BlockId>>& votes) {
  Tally t;
  for (const auto& [voter, value] : votes) {
    if (value) {
      ++t.per_block[*value];
    } else {
      ++t.nil;
    }
  }
  return t;
}

std::uint64_t height_of(const Message& m) {
  return std::visit(
      [](const auto& msg) -> std::uint64_t {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, CommitAnnouncement>) {
          return msg.block->height();
        } else {
          return msg.height;
        }
      },
      m);
}

}  // namespace

Replica::Replica(ReplicaConfig config) : config_(config) {
  if (config_.n == 0 || config_.index >= config_.n) {
    throw std::invalid_argument("replica index out of range");
  }
}

Outputs Replica::start() {
  Outputs out;
  start_round(0, out);
  return out;
}

Outputs Replica::on_message(const Message& message) {
  Outputs out;
  handle(message, out);
  return out;
}

Outputs Replica::on_timeout(const Timeout& t) {
  Outputs out;
  if (t.height != height_ || t.round != round_ || t.step != step_) {
    return out;
  }
  ++timeouts_fired_;
  switch (t.step) {
    case Step::propose: prevote(nullptr, out); break;
    case Step::prevote: precommit(std::nullopt, out); break;
    case Step::precommit: start_round(round_ + 1, out); break;
  }
  return out;
}

BlockPtr Replica::build_proposal(std::uint32_t round) const {
  auto block = std::make_shared<Block>();
  block->id = BlockId{height_, round, config_.index};
  block->txs = mempool_.snapshot(sabotage_.omit_when_proposing, config_.max_block_size);
  return block;
}

void Replica::start_round(std::uint32_t round, Outputs& out) {
  round_ = round;
  step_ = Step::propose;
  out.timers.push_back({height_, round_, Step::propose});

  if (proposer_for(height_, round_, config_.n, config_.proposer_offset) == config_.index) {
    BlockPtr block = locked_ ? locked_ : build_proposal(round_);
    Proposal p{block, height_, round_, config_.index};
    out.broadcast.emplace_back(p);
    handle_proposal(p, out);
    return;
  }
  if (auto it = proposals_.find(round_); it != proposals_.end()) {
    prevote(it->second, out);
  }
}

void Replica::handle(const Message& message, Outputs& out) {
  const std::uint64_t h = height_of(message);
  if (h < height_) {
    return;
  }
  if (h > height_) {
    future_[h].push_back(message);
    return;
  }
  std::visit(
      [&](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, Proposal>) {
          handle_proposal(msg, out);
        } else if constexpr (std::is_same_v<T, Vote>) {
          handle_vote(msg, out);
        } else {
          handle_announcement(msg, out);
        }
      },
      message);
}

void Replica::handle_proposal(const Proposal& p, Outputs& out) {
  if (!p.block || p.proposer != proposer_for(height_, p.round, config_.n, config_.proposer_offset) ||
      p.block->height() != height_ || proposals_.contains(p.round)) {
    return;
  }
  proposals_[p.round] = p.block;
  blocks_[p.block->id] = p.block;

  const std::uint64_t h = height_;
  if (p.round == round_ && step_ == Step::propose) {
    prevote(p.block, out);
    if (height_ != h) {
      return;
    }
  }
  // Votes may have arrived before the block they refer to.
  update_lock(p.round);
  check_precommits(p.round, out);
  if (height_ == h && p.round == round_) {
    check_prevotes(out);
  }
}

void Replica::handle_vote(const Vote& v, Outputs& out) {
  if (v.voter >= config_.n || !record(v)) {
    return;
  }
  if (v.kind == VoteKind::prevote) {
    update_lock(v.round);
    if (v.round == round_) {
      check_prevotes(out);
    }
  } else {
    check_precommits(v.round, out);
  }
}

void Replica::handle_announcement(const CommitAnnouncement& a, Outputs& out) {
  if (a.block && a.block->height() == height_) {
    commit(a.block, a.certificate, true, out);
  }
}

bool Replica::record(const Vote& v) {
  auto& round = votes_[v.round];
  auto& slot = v.kind == VoteKind::prevote ? round.prevotes : round.precommits;
  return slot.emplace(v.voter, v.value).second;
}

bool Replica::withholds(const Block& block) const {
  return block.contains_client_from(sabotage_.withhold_votes_for);
}

BlockPtr Replica::known_block(const BlockId& id) const {
  auto it = blocks_.find(id);
  return it == blocks_.end() ? nullptr : it->second;
}

void Replica::cast(VoteKind kind, std::optional<BlockId> value, Outputs& out) {
  Vote v{kind, height_, round_, value, config_.index};
  out.broadcast.emplace_back(v);
  record(v);
}

void Replica::prevote(BlockPtr block, Outputs& out) {
  std::optional<BlockId> value;
  if (block && (!locked_ || locked_->id == block->id) && !withholds(*block)) {
    value = block->id;
  }
  step_ = Step::prevote;
  out.timers.push_back({height_, round_, Step::prevote});
  cast(VoteKind::prevote, value, out);
  check_prevotes(out);
}

void Replica::precommit(std::optional<BlockId> value, Outputs& out) {
  step_ = Step::precommit;
  out.timers.push_back({height_, round_, Step::precommit});
  cast(VoteKind::precommit, value, out);
  check_precommits(round_, out);
}

void Replica::check_prevotes(Outputs& out) {
  if (step_ != Step::prevote) {
    return;
  }
  const std::uint32_t q = quorum_size(config_.n);
  const Tally t = tally(votes_[round_].prevotes);
  for (const auto& [id, count] : t.per_block) {
    if (count < q) {
      continue;
    }
    BlockPtr block = known_block(id);
    if (!block) {
      return;
    }
    if (withholds(*block)) {
      precommit(std::nullopt, out);
    } else {
      locked_ = block;
      lock_round_ = round_;
      precommit(id, out);
    }
    return;
  }
  if (t.nil >= q) {
    precommit(std::nullopt, out);
  }
}

void Replica::update_lock(std::uint32_t round) {
  if (!locked_ || (lock_round_ && round <= *lock_round_)) {
    return;
  }
  const Tally t = tally(votes_[round].prevotes);
  for (const auto& [id, count] : t.per_block) {
    if (count >= quorum_size(config_.n) && id != locked_->id) {
      if (BlockPtr block = known_block(id); block && !withholds(*block)) {
        locked_ = block;
        lock_round_ = round;
      }
      return;
    }
  }
}

void Replica::check_precommits(std::uint32_t round, Outputs& out) {
  const std::uint32_t q = quorum_size(config_.n);
  const Tally t = tally(votes_[round].precommits);
  for (const auto& [id, count] : t.per_block) {
    if (count >= q) {
      if (BlockPtr block = known_block(id)) {
        commit(block, count, false, out);
      }
      return;
    }
  }
  if (round == round_ && t.nil >= q) {
    start_round(round_ + 1, out);
  }
}

void Replica::commit(BlockPtr block, std::uint32_t certificate, bool adopted, Outputs& out) {
  committed_.push_back({block, certificate, adopted});
  out.commits.push_back({block, certificate, adopted});
  mempool_.mark_delivered(*block);
  if (!adopted) {
    out.broadcast.emplace_back(CommitAnnouncement{block, certificate, config_.index});
  }

  ++height_;
  locked_.reset();
  lock_round_.reset();
  proposals_.clear();
  blocks_.clear();
  votes_.clear();
  start_round(0, out);

  const std::uint64_t h = height_;
  auto node = future_.extract(h);
  std::erase_if(future_, [h](const auto& entry) { return entry.first < h; });
  if (!node.empty()) {
    for (const Message& m : node.mapped()) {
      handle(m, out);
    }
  }
}

}  // namespace fairsim::consensus
