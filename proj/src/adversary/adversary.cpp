#include "fairsim/adversary/adversary.hpp"

#include "fairsim/adversary/enablement.hpp"

namespace fairsim::adversary {

std::string to_string(Refusal r) {
  switch (r) {
    case Refusal::none: return "applied";
    case Refusal::not_enabled: return "not-enabled";
    case Refusal::budget_exceeded: return "budget-exceeded";
  }
  return "unknown";
}

BudgetVector action_cost(const AdversarialAction& action, const ProtectionLevels& protection) {
  return action.baseline_cost.hadamard(protection.at(action.target));
}

Adversary::Adversary(Assumptions assumptions, BudgetVector budget, ProtectionLevels protection)
    : assumptions_(assumptions), initial_(budget), budget_(std::move(budget)), protection_(std::move(protection)) {
  if (budget_.size() != protection_.dims()) {
    throw std::invalid_argument("budget and protection levels disagree on dimensions");
  }
}

AttackOutcome Adversary::apply_attack(ActionTarget& system, const AdversarialAction& action) {
  AttackOutcome outcome;
  outcome.cost = action_cost(action, protection_);

  const Tick now = system.now();
  if (!is_enabled(action, assumptions_.failure, assumptions_.communication, system.baseline_transit(action), now)) {
    outcome.refusal = Refusal::not_enabled;
  } else if (!outcome.cost.fits_within(budget_)) {
    outcome.refusal = Refusal::budget_exceeded;
  }
  if (!outcome.applied()) {
    history_.push_back({now, action, outcome});
    return outcome;
  }

  system.check_action(action);
  system.apply_action(action, knowledge_);

  budget_ = budget_.minus(outcome.cost);
  std::vector<std::int64_t> level = protection_.at(action.target).components();
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (action.baseline_cost[i] > 0) {
      level[i] = 0;
    }
  }
  protection_.set(action.target, BudgetVector(std::move(level)));

  history_.push_back({now, action, outcome});
  return outcome;
}

bool evaluate_goal(const GoalSpec& goal, std::uint64_t games, std::optional<double> target_score) {
  return games > goal.min_games && target_score.has_value() && *target_score < goal.max_score;
}

}  // namespace fairsim::adversary
