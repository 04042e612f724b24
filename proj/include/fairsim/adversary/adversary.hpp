#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsim/adversary/action.hpp"
#include "fairsim/adversary/budget.hpp"
#include "fairsim/adversary/models.hpp"

namespace fairsim::adversary {

class UnknownBehavior : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What passive actions accumulate.
struct KnowledgeEntry {
  Tick at = 0;
  NodeId node;
  std::string observation;
};

using KnowledgeLog = std::vector<KnowledgeEntry>;

/// The system side (η) as seen by the adversary.
class ActionTarget {
 public:
  virtual ~ActionTarget() = default;

  virtual Tick now() const = 0;
  /// Worst-case transit t of the messages a `delay` action would affect.
  virtual Tick baseline_transit(const AdversarialAction& action) const = 0;
  /// Throws (e.g. UnknownBehavior) if the action cannot be realized; must not
  /// mutate anything.
  virtual void check_action(const AdversarialAction& action) const = 0;
  virtual void apply_action(const AdversarialAction& action, KnowledgeLog& knowledge) = 0;
};

enum class Refusal : std::uint8_t { none, not_enabled, budget_exceeded };

std::string to_string(Refusal r);

struct AttackOutcome {
  Refusal refusal = Refusal::none;
  BudgetVector cost;  // charged cost when applied, would-be cost when refused

  bool applied() const { return refusal == Refusal::none; }
};

/// κ(a) ⊙ ψ(s(a)).
BudgetVector action_cost(const AdversarialAction& action, const ProtectionLevels& protection);

struct Assumptions {
  FailureModel failure = FailureModel::byzantine;
  CommunicationModel communication = CommunicationModel::asynchronous();
};

/// Budget-limited adversary. Holds the (b, ψ) part of the simulation state
/// and realizes the `attack` transition against an ActionTarget.
class Adversary {
 public:
  Adversary(Assumptions assumptions, BudgetVector budget, ProtectionLevels protection = ProtectionLevels{});

  /// Checks enablement then budget; on success mutates the target, charges
  /// the budget and zeroes the consumed protection components. A refused
  /// action leaves everything untouched.
  AttackOutcome apply_attack(ActionTarget& system, const AdversarialAction& action);

  const BudgetVector& budget() const { return budget_; }
  const BudgetVector& initial_budget() const { return initial_; }
  const ProtectionLevels& protection() const { return protection_; }
  const Assumptions& assumptions() const { return assumptions_; }
  const KnowledgeLog& knowledge() const { return knowledge_; }

  struct Record {
    Tick at = 0;
    AdversarialAction action;
    AttackOutcome outcome;
  };
  const std::vector<Record>& history() const { return history_; }

 private:
  Assumptions assumptions_;
  BudgetVector initial_;
  BudgetVector budget_;
  ProtectionLevels protection_;
  KnowledgeLog knowledge_;
  std::vector<Record> history_;
};

/// Adversary goal over the observable game state: it wins once more than
/// `min_games` games are resolved and the target's score is below
/// `max_score`.
struct GoalSpec {
  std::uint32_t target_client = 0;
  std::uint64_t min_games = 1500;
  double max_score = 0.75;
};

/// `target_score` is absent when no game has been resolved.
bool evaluate_goal(const GoalSpec& goal, std::uint64_t games, std::optional<double> target_score);

}  // namespace fairsim::adversary
