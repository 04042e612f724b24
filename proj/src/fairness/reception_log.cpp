#include "fairsim/fairness/reception_log.hpp"

#include <stdexcept>

namespace fairsim::fairness {

ReceptionLog::ReceptionLog(Role role, std::uint32_t nodes) : role_(role), nodes_(nodes), ranks_(nodes) {}

bool ReceptionLog::record(std::uint32_t node, TxId tx, Tick at, std::uint64_t seq) {
  auto& list = nodes_.at(node);
  auto& ranks = ranks_.at(node);
  if (ranks.contains(raw(tx))) {
    return false;
  }
  if (!list.empty()) {
    const Reception& last = list.back();
    if (at < last.at || (at == last.at && seq <= last.seq)) {
      throw std::logic_error("reception out of order");
    }
  }
  ranks.emplace(raw(tx), static_cast<std::uint32_t>(list.size()));
  list.push_back({tx, at, seq});
  return true;
}

std::optional<std::uint32_t> ReceptionLog::rank(std::uint32_t node, TxId tx) const {
  const auto& ranks = ranks_.at(node);
  auto it = ranks.find(raw(tx));
  if (it == ranks.end()) {
    return std::nullopt;
  }
  return it->second;
}

void DeliveryIndex::add(TxId tx, Position pos) {
  if (!positions_.emplace(raw(tx), pos).second) {
    throw std::logic_error("transaction delivered twice");
  }
}

std::optional<Position> DeliveryIndex::find(TxId tx) const {
  auto it = positions_.find(raw(tx));
  if (it == positions_.end()) {
    return std::nullopt;
  }
  return it->second;
}

}  // namespace fairsim::fairness
