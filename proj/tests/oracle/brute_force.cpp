#include "brute_force.hpp"

namespace oracle {

namespace {

long find_in(const std::vector<std::uint64_t>& list, std::uint64_t tx) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == tx) return static_cast<long>(i);
  }
  return -1;
}

// Node saw a before b: it received a, and either never received b or got it later.
bool saw_before(const std::vector<std::uint64_t>& list, std::uint64_t a, std::uint64_t b) {
  const long ia = find_in(list, a);
  if (ia < 0) return false;
  const long ib = find_in(list, b);
  return ib < 0 || ia < ib;
}

struct Where {
  bool delivered = false;
  std::size_t height = 0;
  std::size_t index = 0;
};

Where locate(const std::vector<std::vector<std::uint64_t>>& blocks, std::uint64_t tx) {
  for (std::size_t h = 0; h < blocks.size(); ++h) {
    for (std::size_t i = 0; i < blocks[h].size(); ++i) {
      if (blocks[h][i] == tx) return {true, h, i};
    }
  }
  return {};
}

// `first` should have come first: it is violated if `other` is delivered and
// `first` is not, or is delivered later.
bool out_of_order(const Where& first, const Where& other) {
  if (!other.delivered) return false;
  if (!first.delivered) return true;
  if (first.height != other.height) return first.height > other.height;
  return first.index > other.index;
}

bool later_block(const Where& first, const Where& other) {
  if (!other.delivered) return false;
  if (!first.delivered) return true;
  return first.height > other.height;
}

}  // namespace

Counts brute_force(const std::vector<std::vector<std::uint64_t>>& receptions,
                   const std::vector<std::vector<std::uint64_t>>& blocks, const std::vector<TxRecord>& txs,
                   const std::vector<bool>& honest, std::uint32_t f) {
  Counts c;
  const std::size_t n = receptions.size();
  for (std::size_t i = 0; i < txs.size(); ++i) {
    for (std::size_t j = i + 1; j < txs.size(); ++j) {
      const TxRecord& a = txs[i];
      const TxRecord& b = txs[j];
      if (a.puzzle != b.puzzle || a.client == b.client) continue;

      std::size_t ab = 0, ba = 0;
      long honest_ab = 0, honest_ba = 0;
      for (std::size_t node = 0; node < n; ++node) {
        const bool x = saw_before(receptions[node], a.tx, b.tx);
        const bool y = saw_before(receptions[node], b.tx, a.tx);
        ab += x;
        ba += y;
        if (honest[node]) {
          honest_ab += x;
          honest_ba += y;
        }
      }
      const Where wa = locate(blocks, a.tx);
      const Where wb = locate(blocks, b.tx);

      if (2 * ab > n) {
        c.receive += out_of_order(wa, wb);
        c.block += later_block(wa, wb);
      } else if (2 * ba > n) {
        c.receive += out_of_order(wb, wa);
        c.block += later_block(wb, wa);
      }
      const long d = honest_ab - honest_ba;
      const long margin = 2L * f;
      if (d > margin) {
        c.differential += out_of_order(wa, wb);
      } else if (-d > margin) {
        c.differential += out_of_order(wb, wa);
      }
    }
  }
  return c;
}

namespace {

std::vector<TxRecord> records(const fairsim::fabric::FabricNetwork& net) {
  std::vector<TxRecord> out;
  for (const auto& t : net.transactions()) {
    if (!t.forged) out.push_back({fairsim::raw(t.tx), t.client, fairsim::raw(t.puzzle)});
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> lists(const fairsim::fairness::ReceptionLog& log) {
  std::vector<std::vector<std::uint64_t>> out(log.node_count());
  for (std::uint32_t i = 0; i < log.node_count(); ++i) {
    for (const auto& r : log.of(i)) out[i].push_back(fairsim::raw(r.tx));
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> blocks(const fairsim::fabric::FabricNetwork& net) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& b : net.ledger().blocks()) {
    out.emplace_back();
    for (const auto& t : b.block->txs) out.back().push_back(fairsim::raw(t.tx));
  }
  return out;
}

}  // namespace

Counts peers(const fairsim::fabric::FabricNetwork& net) {
  return brute_force(lists(net.peer_log()), blocks(net), records(net), net.honest(fairsim::Role::peer),
                     net.config().peer_f());
}

Counts orderers(const fairsim::fabric::FabricNetwork& net) {
  return brute_force(lists(net.orderer_log()), blocks(net), records(net), net.honest(fairsim::Role::orderer),
                     net.config().topology.orderer_faults);
}

}  // namespace oracle
