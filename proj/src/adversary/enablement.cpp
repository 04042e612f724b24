#include "fairsim/adversary/enablement.hpp"

#include <array>
#include <span>

namespace fairsim::adversary {

namespace {

using Comm = CommunicationModel::Kind;

// Kinds listed per cell, before closure.
std::span<const ActionKind> listed(FailureModel failure, Comm comm) {
  static constexpr std::array reveal_delay = {ActionKind::reveal, ActionKind::delay};
  static constexpr std::array crash_bounded = {ActionKind::reveal, ActionKind::stop, ActionKind::delay};
  static constexpr std::array omission_bounded = {ActionKind::reveal, ActionKind::skip, ActionKind::delay};
  static constexpr std::array inject_only = {ActionKind::inject};

  switch (failure) {
    case FailureModel::crash:
      return comm == Comm::asynchronous ? std::span<const ActionKind>(reveal_delay) : crash_bounded;
    case FailureModel::omission:
      return comm == Comm::asynchronous ? std::span<const ActionKind>(reveal_delay) : omission_bounded;
    case FailureModel::performance: return reveal_delay;
    case FailureModel::byzantine: return inject_only;
  }
  return {};
}

}  // namespace

bool kind_available(ActionKind kind, FailureModel failure, Comm comm) {
  for (ActionKind l : listed(failure, comm)) {
    if (is_subkind(kind, l)) {
      return true;
    }
  }
  return false;
}

DelayBound delay_bound(FailureModel failure, Comm comm) {
  if (failure != FailureModel::crash && failure != FailureModel::omission) {
    return DelayBound::none;
  }
  switch (comm) {
    case Comm::synchronous: return DelayBound::always;
    case Comm::eventually_synchronous: return DelayBound::after_gst;
    case Comm::asynchronous: return DelayBound::none;
  }
  return DelayBound::none;
}

bool is_enabled(const AdversarialAction& action, FailureModel failure, const CommunicationModel& comm,
                Tick baseline_transit, Tick emitted_at) {
  if (!kind_available(action.kind, failure, comm.kind)) {
    return false;
  }
  if (action.kind != ActionKind::delay) {
    return true;
  }
  const bool within = baseline_transit + action.delta < comm.delta;
  switch (delay_bound(failure, comm.kind)) {
    case DelayBound::none: return true;
    case DelayBound::always: return within;
    case DelayBound::after_gst: return emitted_at < comm.gst || within;
  }
  return false;
}

}  // namespace fairsim::adversary
