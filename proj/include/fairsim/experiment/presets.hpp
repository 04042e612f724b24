#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairsim/experiment/config.hpp"

namespace fairsim::experiment {

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Small topology used by default: 3 clients, 16 peers with 10
/// endorsements, 7 orderers tolerating 2 faults, 5000 ticks.
ExperimentConfig desk_base();
/// 3 clients, 50 peers with 25 endorsements, 55 orderers tolerating 18
/// faults, 20000 ticks.
ExperimentConfig full_base();

std::vector<PresetInfo> list_presets();
std::optional<ExperimentConfig> find_preset(const std::string& name);

}  // namespace fairsim::experiment
