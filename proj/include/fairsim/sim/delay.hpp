#pragma once

#include <optional>
#include <string>

#include "fairsim/core/ids.hpp"
#include "fairsim/sim/random.hpp"

namespace fairsim::sim {

/// Either a uniform integer distribution over [min, max] ticks or a constant.
struct DelaySpec {
  enum class Kind : std::uint8_t { uniform, constant };

  Kind kind = Kind::constant;
  Tick min = 0;
  Tick max = 0;

  static DelaySpec uniform(Tick lo, Tick hi) { return {Kind::uniform, lo, hi}; }
  static DelaySpec constant(Tick ticks) { return {Kind::constant, ticks, ticks}; }

  Tick upper_bound() const { return kind == Kind::uniform ? max : min; }

  friend bool operator==(const DelaySpec&, const DelaySpec&) = default;
};

/// Returns a description of what is wrong with `spec`, if anything.
std::optional<std::string> check(const DelaySpec& spec);

Tick sample_delay(const DelaySpec& spec, Rng& rng);

std::string to_string(const DelaySpec& spec);

/// Delays applied on both sides of a node's network interface.
struct NodeDelays {
  DelaySpec output = DelaySpec::constant(0);
  DelaySpec input = DelaySpec::constant(0);
};

}  // namespace fairsim::sim
