#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <unordered_set>
#include <vector>

#include "fairsim/core/ids.hpp"

namespace fairsim::consensus {

struct BlockTx {
  TxId tx{};
  std::uint32_t client = 0;

  friend bool operator==(const BlockTx&, const BlockTx&) = default;
};

/// Identifies a proposal: a proposer makes at most one per (height, round).
struct BlockId {
  std::uint64_t height = 0;
  std::uint32_t round = 0;
  std::uint32_t proposer = 0;

  friend constexpr auto operator<=>(const BlockId&, const BlockId&) = default;
};

struct Block {
  BlockId id;
  std::vector<BlockTx> txs;

  std::uint64_t height() const { return id.height; }
  bool contains_client_from(const std::set<std::uint32_t>& clients) const;
};

using BlockPtr = std::shared_ptr<const Block>;

/// Endorsed transactions waiting to be ordered, in local reception order.
class Mempool {
 public:
  /// False when the tx is already pending or already delivered.
  bool add(BlockTx tx);
  bool contains(TxId tx) const { return pending_.contains(raw(tx)); }
  bool delivered(TxId tx) const { return delivered_.contains(raw(tx)); }
  void mark_delivered(const Block& block);

  /// Pending txs in reception order, skipping clients in `exclude`, at most
  /// `limit` of them (0 means no limit).
  std::vector<BlockTx> snapshot(const std::set<std::uint32_t>& exclude, std::size_t limit) const;

  std::size_t size() const { return pending_.size(); }

 private:
  std::vector<BlockTx> order_;
  std::unordered_set<std::uint64_t> pending_;
  std::unordered_set<std::uint64_t> delivered_;
};

}  // namespace fairsim::consensus
