#pragma once

#include <string>
#include <vector>

#include "shelfplan/plan.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

/// Independent replay of a plan against the instance: placements stay
/// collision-free, every sweep re-checks clean against the arrangement it was
/// planned in, grasp poses exist at both ends, and the final arrangement is
/// the goal. Returns human-readable problems; empty means valid.
std::vector<std::string> validate_plan(const Instance& instance, const Plan& plan);

inline bool plan_valid(const Instance& instance, const Plan& plan) {
  return validate_plan(instance, plan).empty();
}

}  // namespace shelfplan
