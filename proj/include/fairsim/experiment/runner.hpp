#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/adversary/adversary.hpp"
#include "fairsim/experiment/config.hpp"
#include "fairsim/fabric/network.hpp"
#include "fairsim/fairness/score.hpp"

namespace fairsim::experiment {

/// One simulation: the network η, the adversary holding (b, ψ), and the
/// static plan that feeds it actions.
class Simulation {
 public:
  /// Throws ConfigError if `config` has validation errors.
  explicit Simulation(const ExperimentConfig& config);

  /// Runs to the horizon. Planned actions fire before any event scheduled at
  /// their trigger tick.
  void run();

  const ExperimentConfig& config() const { return config_; }
  const fabric::FabricNetwork& network() const { return network_; }
  const adversary::Adversary& adversary() const { return adversary_; }
  const adversary::AttackPlan& plan() const { return plan_; }

 private:
  void fire_due(Tick up_to);

  ExperimentConfig config_;
  fabric::FabricNetwork network_;
  adversary::Adversary adversary_;
  adversary::AttackPlan plan_;
  std::size_t next_step_ = 0;
};

struct RunResult {
  std::string run_id;
  std::uint64_t seed = 0;
  fabric::Topology topology;
  std::uint32_t infected_peers = 0;
  std::uint32_t infected_orderers = 0;
  bool withhold_votes = false;
  Tick fixed_delay = 0;
  Tick peer_delay_max = 0;
  std::uint32_t target_client = 0;

  fairness::FairnessReport report;
  std::vector<fairness::ScorePoint> series;
  std::uint64_t ledger_height = 0;
  std::uint64_t target_endorsed = 0;
  std::uint64_t agreement_violations = 0;
  std::size_t refused_actions = 0;
  adversary::BudgetVector budget_left;
  bool goal_met = false;
};

RunResult summarize(const Simulation& sim);
RunResult run_experiment(const ExperimentConfig& config);

/// Runs every point on up to `parallel` threads. Results come back in point
/// order whatever order they finish in.
std::vector<RunResult> run_all(const std::vector<ExperimentConfig>& points, unsigned parallel = 1);

}  // namespace fairsim::experiment
