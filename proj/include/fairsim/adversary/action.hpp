#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairsim/adversary/budget.hpp"
#include "fairsim/core/ids.hpp"

namespace fairsim::adversary {

enum class ActionKind : std::uint8_t { reveal, listen, send, delay, skip, stop, inject };

inline constexpr ActionKind kAllActionKinds[] = {ActionKind::reveal, ActionKind::listen, ActionKind::send,
                                                 ActionKind::delay,  ActionKind::skip,   ActionKind::stop,
                                                 ActionKind::inject};

enum class Direction : std::uint8_t { input, output, both };

constexpr bool covers_input(Direction d) { return d != Direction::output; }
constexpr bool covers_output(Direction d) { return d != Direction::input; }

/// Subsumption between action kinds: listen ⊑ reveal, stop ⊑ skip, and every
/// kind ⊑ inject. Reflexive. `delay` carries a finite δ here; skip is only
/// equivalent to an unbounded delay, which is not a kind of its own.
bool is_subkind(ActionKind sub, ActionKind super);

/// Passive kinds have no direct effect on the system's execution.
constexpr bool is_passive(ActionKind k) { return k == ActionKind::reveal || k == ActionKind::listen; }

/// Behaviours an `inject` action can install.
namespace behavior {
inline constexpr const char* kRefuseEndorsement = "refuse-endorsement";
inline constexpr const char* kOmitFromProposals = "omit-from-proposals";
inline constexpr const char* kWithholdVotes = "withhold-votes";
}  // namespace behavior

struct AdversarialAction {
  ActionKind kind = ActionKind::reveal;
  NodeId target;
  Direction direction = Direction::both;
  Tick delta = 0;  // added transit for `delay`
  BudgetVector baseline_cost = BudgetVector::zeros(kDefaultDimensions);

  // inject: behaviour id and the clients it discriminates against
  std::string behavior;
  std::vector<std::uint32_t> clients;

  // send: the forged message, claimed to come from `forged_sender`
  NodeId forged_sender;
  std::string message;
  std::uint64_t message_arg = 0;
};

/// Default κ: one unit on the role's dimension for `inject` on peers and
/// orderers, zero for everything else.
BudgetVector default_cost(ActionKind kind, NodeId target, std::size_t dims = kDefaultDimensions);

struct PlannedAction {
  Tick trigger = 0;
  AdversarialAction action;
};

/// Static plan: actions fire at fixed ticks, in list order.
struct AttackPlan {
  std::vector<PlannedAction> steps;

  bool triggers_sorted() const;
};

std::string to_string(ActionKind kind);
std::string to_string(Direction direction);
ActionKind parse_action_kind(const std::string& text);
Direction parse_direction(const std::string& text);
std::string describe(const AdversarialAction& action);

}  // namespace fairsim::adversary
