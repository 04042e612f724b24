#include "fairsim/fabric/ledger.hpp"

#include <stdexcept>

namespace fairsim::fabric {

void Ledger::append(consensus::BlockPtr block, Tick at, std::uint32_t certificate) {
  if (!block || block->height() != height() + 1) {
    throw std::logic_error("ledger heights must be consecutive");
  }
  for (std::uint32_t i = 0; i < block->txs.size(); ++i) {
    delivery_.add(block->txs[i].tx, {block->height(), i});
  }
  blocks_.push_back({std::move(block), at, certificate});
}

}  // namespace fairsim::fabric
