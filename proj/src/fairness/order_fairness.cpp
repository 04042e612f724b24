#include "fairsim/fairness/order_fairness.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "fairsim/simd/count_kernels.hpp"

namespace fairsim::fairness {

std::vector<CompetingPair> competing_pairs(std::span<const TxInfo> txs) {
  std::map<std::uint64_t, std::vector<TxInfo>> by_puzzle;
  for (const TxInfo& t : txs) {
    by_puzzle[raw(t.puzzle)].push_back(t);
  }
  std::vector<CompetingPair> out;
  for (auto& [puzzle, group] : by_puzzle) {
    std::sort(group.begin(), group.end(), [](const TxInfo& a, const TxInfo& b) { return raw(a.tx) < raw(b.tx); });
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        if (group[i].client != group[j].client) {
          out.push_back({PuzzleId{puzzle}, group[i].tx, group[j].tx});
        }
      }
    }
  }
  return out;
}

RankMatrix::RankMatrix(const ReceptionLog& log, std::span<const TxId> txs)
    : nodes_(log.node_count()), absent_(log.node_count(), simd::kAbsentRank) {
  for (TxId tx : txs) {
    if (index_.contains(raw(tx))) {
      continue;
    }
    index_.emplace(raw(tx), index_.size());
  }
  ranks_.assign(index_.size() * nodes_, simd::kAbsentRank);
  for (std::uint32_t node = 0; node < nodes_; ++node) {
    const auto& list = log.of(node);
    for (std::size_t pos = 0; pos < list.size(); ++pos) {
      auto it = index_.find(raw(list[pos].tx));
      if (it != index_.end()) {
        ranks_[it->second * nodes_ + node] = static_cast<std::int32_t>(pos);
      }
    }
  }
}

std::span<const std::int32_t> RankMatrix::row(TxId tx) const {
  auto it = index_.find(raw(tx));
  if (it == index_.end()) {
    return absent_;
  }
  return {ranks_.data() + it->second * nodes_, nodes_};
}

std::uint32_t count_before(const RankMatrix& ranks, TxId t, TxId t_prime) {
  return static_cast<std::uint32_t>(simd::count_less(ranks.row(t), ranks.row(t_prime)));
}

std::uint32_t count_before(const RankMatrix& ranks, TxId t, TxId t_prime, std::span<const std::int32_t> mask) {
  return static_cast<std::uint32_t>(simd::count_less_masked(ranks.row(t), ranks.row(t_prime), mask));
}

bool precedes_majority(const RankMatrix& ranks, TxId t, TxId t_prime) {
  return 2ULL * count_before(ranks, t, t_prime) > ranks.nodes();
}

bool precedes_majority(const ReceptionLog& log, TxId t, TxId t_prime) {
  const TxId both[] = {t, t_prime};
  return precedes_majority(RankMatrix(log, both), t, t_prime);
}

bool delivered_out_of_order(const DeliveryIndex& delivery, TxId first, TxId other) {
  const auto other_pos = delivery.find(other);
  if (!other_pos) {
    return false;
  }
  const auto first_pos = delivery.find(first);
  return !first_pos || *other_pos < *first_pos;
}

bool delivered_in_later_block(const DeliveryIndex& delivery, TxId first, TxId other) {
  const auto other_pos = delivery.find(other);
  if (!other_pos) {
    return false;
  }
  const auto first_pos = delivery.find(first);
  return !first_pos || first_pos->height > other_pos->height;
}

namespace {

struct Oriented {
  TxId first;
  TxId other;
};

std::optional<Oriented> orient_by_majority(const RankMatrix& ranks, const CompetingPair& p) {
  if (precedes_majority(ranks, p.t, p.t_prime)) {
    return Oriented{p.t, p.t_prime};
  }
  if (precedes_majority(ranks, p.t_prime, p.t)) {
    return Oriented{p.t_prime, p.t};
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t count_receive_order_violations(const RankMatrix& ranks, std::span<const CompetingPair> pairs,
                                             const DeliveryIndex& delivery) {
  std::uint64_t n = 0;
  for (const CompetingPair& p : pairs) {
    if (auto o = orient_by_majority(ranks, p); o && delivered_out_of_order(delivery, o->first, o->other)) {
      ++n;
    }
  }
  return n;
}

std::uint64_t count_block_order_violations(const RankMatrix& ranks, std::span<const CompetingPair> pairs,
                                           const DeliveryIndex& delivery) {
  std::uint64_t n = 0;
  for (const CompetingPair& p : pairs) {
    if (auto o = orient_by_majority(ranks, p); o && delivered_in_later_block(delivery, o->first, o->other)) {
      ++n;
    }
  }
  return n;
}

std::uint64_t count_differential_order_violations(const RankMatrix& ranks, std::span<const CompetingPair> pairs,
                                                  const DeliveryIndex& delivery,
                                                  std::span<const std::int32_t> honest_mask, std::uint32_t f) {
  if (honest_mask.size() != ranks.nodes()) {
    throw std::invalid_argument("honest mask size differs from node count");
  }
  const std::int64_t margin = 2LL * f;
  std::uint64_t n = 0;
  for (const CompetingPair& p : pairs) {
    const std::int64_t d = static_cast<std::int64_t>(count_before(ranks, p.t, p.t_prime, honest_mask)) -
                           static_cast<std::int64_t>(count_before(ranks, p.t_prime, p.t, honest_mask));
    if (d > margin && delivered_out_of_order(delivery, p.t, p.t_prime)) {
      ++n;
    } else if (-d > margin && delivered_out_of_order(delivery, p.t_prime, p.t)) {
      ++n;
    }
  }
  return n;
}

RoleViolations count_violations(const ReceptionLog& log, std::span<const CompetingPair> pairs,
                                const DeliveryIndex& delivery, const std::vector<bool>& honest, std::uint32_t f) {
  if (honest.size() != log.node_count()) {
    throw std::invalid_argument("honest flags size differs from node count");
  }
  std::vector<TxId> txs;
  txs.reserve(pairs.size() * 2);
  for (const CompetingPair& p : pairs) {
    txs.push_back(p.t);
    txs.push_back(p.t_prime);
  }
  const RankMatrix ranks(log, txs);
  std::vector<std::int32_t> mask(honest.size());
  for (std::size_t i = 0; i < honest.size(); ++i) {
    mask[i] = honest[i] ? -1 : 0;
  }
  return RoleViolations{count_receive_order_violations(ranks, pairs, delivery),
                        count_block_order_violations(ranks, pairs, delivery),
                        count_differential_order_violations(ranks, pairs, delivery, mask, f)};
}

}  // namespace fairsim::fairness
