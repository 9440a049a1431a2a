#pragma once

#include <string>

#include "dayroute/errors.hpp"

namespace dayroute {

/// Weights of the four terms of a vehicle's objective. Travel times enter
/// in minutes and the objective is a cost, so the reward handed to a
/// learner is the negated weighted sum.
struct RewardSpec {
  double w_own = 0.0;     // own travel time
  double w_fleet = 0.0;   // mean travel time of the automated fleet
  double w_human = 0.0;   // mean travel time of human drivers
  double w_system = 0.0;  // mean travel time of everyone

  bool operator==(const RewardSpec&) const = default;
};

inline RewardSpec behavior_preset(const std::string& name) {
  if (name == "selfish") return {1.0, 0.0, 0.0, 0.0};
  if (name == "cooperative") return {0.0, 1.0, 0.0, 0.0};
  if (name == "altruistic") return {0.0, 0.0, 0.0, 1.0};
  if (name == "malicious") return {0.0, 0.0, -1.0, 0.0};
  throw ConfigError("unknown behavior preset: " + name);
}

}  // namespace dayroute
