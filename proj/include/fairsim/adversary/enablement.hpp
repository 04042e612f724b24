#pragma once

#include "fairsim/adversary/action.hpp"
#include "fairsim/adversary/models.hpp"

namespace fairsim::adversary {

/// How the communication model constrains the transit of a delayed message.
enum class DelayBound : std::uint8_t {
  none,             // any δ
  always,           // t + δ < Δ
  after_gst,        // emitted-at >= GST implies t + δ < Δ
};

/// Whether `kind` is available in the (failure, communication) cell, before
/// any delay side condition. Listed kinds are closed downward under
/// subsumption: listen wherever reveal, stop wherever skip, everything under
/// inject.
bool kind_available(ActionKind kind, FailureModel failure, CommunicationModel::Kind comm);

DelayBound delay_bound(FailureModel failure, CommunicationModel::Kind comm);

/// Full predicate: cell membership plus the delay-bound side condition
/// evaluated on `baseline_transit` (t) and `emitted_at` (o).
bool is_enabled(const AdversarialAction& action, FailureModel failure, const CommunicationModel& comm,
                Tick baseline_transit, Tick emitted_at);

}  // namespace fairsim::adversary
