#pragma once

#include <vector>

#include "fairsim/consensus/block.hpp"
#include "fairsim/fairness/reception_log.hpp"

namespace fairsim::fabric {

struct DeliveredBlock {
  consensus::BlockPtr block;
  Tick delivered_at = 0;
  std::uint32_t certificate = 0;
};

/// Append-only delivery record. Heights run 1, 2, ... and every transaction
/// lands in at most one block.
class Ledger {
 public:
  /// Throws std::logic_error on a height gap or a re-delivered transaction.
  void append(consensus::BlockPtr block, Tick at, std::uint32_t certificate);

  std::uint64_t height() const { return blocks_.size(); }
  const std::vector<DeliveredBlock>& blocks() const { return blocks_; }
  const DeliveredBlock& at_height(std::uint64_t h) const { return blocks_.at(h - 1); }
  const fairness::DeliveryIndex& delivery() const { return delivery_; }
  std::size_t transaction_count() const { return delivery_.size(); }

 private:
  std::vector<DeliveredBlock> blocks_;
  fairness::DeliveryIndex delivery_;
};

}  // namespace fairsim::fabric
