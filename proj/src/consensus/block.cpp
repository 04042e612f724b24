#include "fairsim/consensus/block.hpp"

#include <algorithm>

namespace fairsim::consensus {

bool Block::contains_client_from(const std::set<std::uint32_t>& clients) const {
  if (clients.empty()) {
    return false;
  }
  return std::any_of(txs.begin(), txs.end(), [&](const BlockTx& t) { return clients.contains(t.client); });
}

bool Mempool::add(BlockTx tx) {
  const auto key = raw(tx.tx);
  if (pending_.contains(key) || delivered_.contains(key)) {
    return false;
  }
  pending_.insert(key);
  order_.push_back(tx);
  return true;
}

void Mempool::mark_delivered(const Block& block) {
  for (const BlockTx& t : block.txs) {
    delivered_.insert(raw(t.tx));
    pending_.erase(raw(t.tx));
  }
  std::erase_if(order_, [&](const BlockTx& t) { return !pending_.contains(raw(t.tx)); });
}

std::vector<BlockTx> Mempool::snapshot(const std::set<std::uint32_t>& exclude, std::size_t limit) const {
  std::vector<BlockTx> out;
  for (const BlockTx& t : order_) {
    if (limit != 0 && out.size() == limit) {
      break;
    }
    if (!exclude.contains(t.client)) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace fairsim::consensus
