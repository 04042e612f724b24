#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsim/adversary/adversary.hpp"
#include "fairsim/fabric/topology.hpp"

namespace fairsim::experiment {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adversary section. The shorthand fields expand into trigger-0 actions
/// aimed at the goal's target client; `actions` are appended verbatim.
struct AdversaryConfig {
  adversary::FailureModel failure = adversary::FailureModel::byzantine;
  adversary::CommunicationModel communication = adversary::CommunicationModel::asynchronous();
  std::optional<adversary::BudgetVector> budget;  // default (n_p - m_p, f_o)

  Tick fixed_delay = 0;  // extra output delay on the target client
  std::optional<std::uint32_t> infected_peers;
  std::optional<double> infected_peer_fraction;
  std::optional<std::uint32_t> infected_orderers;
  std::optional<double> infected_orderer_fraction;
  bool withhold_votes = false;

  std::vector<adversary::PlannedAction> actions;
};

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string id = "run";
  fabric::NetworkConfig network;
  AdversaryConfig adversary;
  adversary::GoalSpec goal;
  /// Cartesian product, first axis outermost.
  std::vector<SweepAxis> sweep;
};

/// Throws ConfigError with a message naming the offending key.
ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::string& path);
std::string to_yaml(const ExperimentConfig& config);

enum class Severity : std::uint8_t { warning, error };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
};

std::string to_string(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

std::vector<Diagnostic> validate(const ExperimentConfig& config);

adversary::BudgetVector default_budget(const fabric::Topology& topology);
adversary::BudgetVector effective_budget(const ExperimentConfig& config);

/// Fractions round to the nearest whole node.
std::uint32_t infected_peer_count(const ExperimentConfig& config);
std::uint32_t infected_orderer_count(const ExperimentConfig& config);

adversary::AttackPlan expand_plan(const ExperimentConfig& config);

/// Parameters a sweep axis may name.
std::vector<std::string> sweep_parameters();
/// Throws ConfigError for an unknown parameter or an out-of-range value.
void set_parameter(ExperimentConfig& config, const std::string& parameter, double value);

std::size_t grid_size(const ExperimentConfig& config);
/// One config per grid point, in deterministic order, with id
/// "<id>-<index>" and seed derive_seed(seed, index). A config without sweep
/// axes expands to itself.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config);

}  // namespace fairsim::experiment
