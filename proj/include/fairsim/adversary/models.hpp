#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fairsim/core/ids.hpp"

namespace fairsim::adversary {

/// Nested failure hierarchy: crash ⊂ omission ⊂ performance ⊂ byzantine.
enum class FailureModel : std::uint8_t { crash, omission, performance, byzantine };

/// True when every failure allowed by `inner` is also allowed by `outer`.
constexpr bool includes(FailureModel outer, FailureModel inner) {
  return static_cast<int>(inner) <= static_cast<int>(outer);
}

struct CommunicationModel {
  enum class Kind : std::uint8_t { synchronous, asynchronous, eventually_synchronous };

  Kind kind = Kind::asynchronous;
  Tick delta = 0;  // transit bound, meaningful unless asynchronous
  Tick gst = 0;    // global stabilization time, eventually-synchronous only

  static CommunicationModel synchronous(Tick delta) { return {Kind::synchronous, delta, 0}; }
  static CommunicationModel asynchronous() { return {Kind::asynchronous, 0, 0}; }
  static CommunicationModel eventually_synchronous(Tick delta, Tick gst) {
    return {Kind::eventually_synchronous, delta, gst};
  }
};

std::optional<std::string> check(const CommunicationModel& model);

std::string to_string(FailureModel model);
std::string to_string(CommunicationModel::Kind kind);
FailureModel parse_failure_model(const std::string& text);
CommunicationModel::Kind parse_communication_kind(const std::string& text);

}  // namespace fairsim::adversary
