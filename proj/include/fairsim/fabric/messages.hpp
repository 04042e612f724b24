#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "fairsim/consensus/tendermint.hpp"
#include "fairsim/core/ids.hpp"
#include "fairsim/sim/engine.hpp"

namespace fairsim::fabric {

struct Transaction {
  TxId tx{};
  std::uint32_t client = 0;
  PuzzleId puzzle{};
  Tick created_at = 0;
  bool forged = false;
};

/// client -> peer
struct SubmitTx {
  TxId tx{};
  std::uint32_t client = 0;
  PuzzleId puzzle{};
};

/// peer -> client
struct Endorsement {
  TxId tx{};
  std::uint32_t peer = 0;
};

/// client -> orderer, once m_p distinct endorsements are in hand
struct EndorsedTransaction {
  TxId tx{};
  std::uint32_t client = 0;
  PuzzleId puzzle{};
  std::vector<std::uint32_t> endorsers;
};

/// orderer -> orderer
struct ConsensusPayload {
  consensus::Message message;
};

using Message = std::variant<SubmitTx, Endorsement, EndorsedTransaction, ConsensusPayload>;

struct PuzzleReveal {
  PuzzleId puzzle{};
};

struct SolutionReady {
  std::uint32_t client = 0;
  PuzzleId puzzle{};
};

struct ConsensusTimer {
  std::uint32_t orderer = 0;
  consensus::Timeout timeout;
};

using Event = std::variant<sim::Envelope<Message>, PuzzleReveal, SolutionReady, ConsensusTimer>;

}  // namespace fairsim::fabric
