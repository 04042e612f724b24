#include "fairsim/sim/delay.hpp"

#include <random>
#include <stdexcept>

namespace fairsim::sim {

std::optional<std::string> check(const DelaySpec& spec) {
  if (spec.kind == DelaySpec::Kind::uniform) {
    if (spec.min < 1) {
      return "uniform delay must have min >= 1";
    }
    if (spec.max < spec.min) {
      return "uniform delay must have max >= min";
    }
  }
  return std::nullopt;
}

Tick sample_delay(const DelaySpec& spec, Rng& rng) {
  if (spec.kind == DelaySpec::Kind::constant) {
    return spec.min;
  }
  return std::uniform_int_distribution<Tick>(spec.min, spec.max)(rng);
}

std::string to_string(const DelaySpec& spec) {
  if (spec.kind == DelaySpec::Kind::constant) {
    return "constant(" + std::to_string(spec.min) + ")";
  }
  return "uniform(" + std::to_string(spec.min) + "," + std::to_string(spec.max) + ")";
}

}  // namespace fairsim::sim
