#include "fairsim/adversary/action.hpp"

#include <stdexcept>

namespace fairsim::adversary {

bool is_subkind(ActionKind sub, ActionKind super) {
  if (sub == super || super == ActionKind::inject) {
    return true;
  }
  return (sub == ActionKind::listen && super == ActionKind::reveal) ||
         (sub == ActionKind::stop && super == ActionKind::skip);
}

BudgetVector default_cost(ActionKind kind, NodeId target, std::size_t dims) {
  auto cost = std::vector<std::int64_t>(dims, 0);
  if (kind == ActionKind::inject) {
    if (target.role == Role::peer && dims > kPeerDimension) {
      cost[kPeerDimension] = 1;
    } else if (target.role == Role::orderer && dims > kOrdererDimension) {
      cost[kOrdererDimension] = 1;
    }
  }
  return BudgetVector(std::move(cost));
}

bool AttackPlan::triggers_sorted() const {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].trigger < steps[i - 1].trigger) {
      return false;
    }
  }
  return true;
}

std::string to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::reveal: return "reveal";
    case ActionKind::listen: return "listen";
    case ActionKind::send: return "send";
    case ActionKind::delay: return "delay";
    case ActionKind::skip: return "skip";
    case ActionKind::stop: return "stop";
    case ActionKind::inject: return "inject";
  }
  return "unknown";
}

std::string to_string(Direction direction) {
  switch (direction) {
    case Direction::input: return "input";
    case Direction::output: return "output";
    case Direction::both: return "both";
  }
  return "unknown";
}

ActionKind parse_action_kind(const std::string& text) {
  for (ActionKind k : kAllActionKinds) {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw std::invalid_argument("unknown action kind '" + text + "'");
}

Direction parse_direction(const std::string& text) {
  for (auto d : {Direction::input, Direction::output, Direction::both}) {
    if (to_string(d) == text) {
      return d;
    }
  }
  throw std::invalid_argument("unknown direction '" + text + "'");
}

std::string describe(const AdversarialAction& a) {
  std::string out = to_string(a.kind) + " " + to_string(a.target);
  switch (a.kind) {
    case ActionKind::listen:
    case ActionKind::skip: out += " " + to_string(a.direction); break;
    case ActionKind::delay: out += " " + to_string(a.direction) + " +" + std::to_string(a.delta); break;
    case ActionKind::inject: out += " " + a.behavior; break;
    case ActionKind::send: out += " " + a.message + " as " + to_string(a.forged_sender); break;
    default: break;
  }
  return out;
}

}  // namespace fairsim::adversary
