#pragma once

#include <string>

#include <json.hpp>

#include "shelfplan/constraints.hpp"
#include "shelfplan/manipulation.hpp"
#include "shelfplan/monotone.hpp"
#include "shelfplan/plan.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

nlohmann::json world_to_json(const WorldSpec& world);
WorldSpec world_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);  // ParseError with the offending key

WorldSpec load_world(const std::string& path);

/// {"planner":"grid"|"roadmap","grid_factor":int,"roadmap_samples":int,"roadmap_seed":int}
PlannerConfig planner_config_from_json(const nlohmann::json& j);

nlohmann::json stats_to_json(const SolveStats& stats);

nlohmann::json plan_to_json(const Plan& plan, const Instance& instance, const SolveStats& stats);
Plan plan_from_json(const nlohmann::json& j, const Instance& instance);
void save_plan(const Plan& plan, const Instance& instance, const SolveStats& stats,
               const std::string& path);
Plan load_plan(const std::string& path, const Instance& instance);

/// Debug dump of the constraint container: per object, clauses as
/// [["G","o2"],["S","o1"]].
nlohmann::json constraints_to_json(const ConstraintStore& store, const Instance& instance);

Budget budget_from_json(const nlohmann::json& j);

}  // namespace shelfplan
