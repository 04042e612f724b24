#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "fairsim/core/ids.hpp"
#include "fairsim/fairness/reception_log.hpp"

namespace fairsim::fairness {

struct TxInfo {
  TxId tx{};
  std::uint32_t client = 0;
  PuzzleId puzzle{};
};

/// Two solutions to the same puzzle from different clients, stored with
/// `t` < `t_prime` by tx id.
struct CompetingPair {
  PuzzleId puzzle{};
  TxId t{};
  TxId t_prime{};
};

/// Every competing pair, ordered by puzzle then by tx ids.
std::vector<CompetingPair> competing_pairs(std::span<const TxInfo> txs);

/// Reception ranks of a set of transactions at every node of one role,
/// one contiguous row per transaction.
class RankMatrix {
 public:
  RankMatrix(const ReceptionLog& log, std::span<const TxId> txs);

  std::span<const std::int32_t> row(TxId tx) const;
  std::uint32_t nodes() const { return nodes_; }

 private:
  std::uint32_t nodes_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::int32_t> ranks_;
  std::vector<std::int32_t> absent_;
};

/// Nodes that received `t` strictly before `t_prime`; a node that received
/// only `t` counts, one that received neither does not.
std::uint32_t count_before(const RankMatrix& ranks, TxId t, TxId t_prime);
/// Same, restricted to lanes where `mask` is -1.
std::uint32_t count_before(const RankMatrix& ranks, TxId t, TxId t_prime, std::span<const std::int32_t> mask);

/// Strictly more than half of the role's nodes received `t` before `t_prime`.
bool precedes_majority(const RankMatrix& ranks, TxId t, TxId t_prime);
bool precedes_majority(const ReceptionLog& log, TxId t, TxId t_prime);

/// True when `other` is delivered and `first` is either undelivered or
/// delivered after it.
bool delivered_out_of_order(const DeliveryIndex& delivery, TxId first, TxId other);
/// Block granularity: `first` undelivered while `other` is, or in a strictly
/// later block.
bool delivered_in_later_block(const DeliveryIndex& delivery, TxId first, TxId other);

std::uint64_t count_receive_order_violations(const RankMatrix& ranks, std::span<const CompetingPair> pairs,
                                             const DeliveryIndex& delivery);
std::uint64_t count_block_order_violations(const RankMatrix& ranks, std::span<const CompetingPair> pairs,
                                           const DeliveryIndex& delivery);
/// `honest_mask` has one lane per node, -1 for honest nodes and 0 otherwise.
std::uint64_t count_differential_order_violations(const RankMatrix& ranks, std::span<const CompetingPair> pairs,
                                                  const DeliveryIndex& delivery,
                                                  std::span<const std::int32_t> honest_mask, std::uint32_t f);

struct RoleViolations {
  std::uint64_t receive = 0;
  std::uint64_t block = 0;
  std::uint64_t differential = 0;

  friend bool operator==(const RoleViolations&, const RoleViolations&) = default;
};

/// All three counters for one role. `honest[i]` says whether node i counts
/// for the differential property.
RoleViolations count_violations(const ReceptionLog& log, std::span<const CompetingPair> pairs,
                                const DeliveryIndex& delivery, const std::vector<bool>& honest, std::uint32_t f);

}  // namespace fairsim::fairness
