#include "shelfplan/json_io.hpp"

#include <fstream>

#include "shelfplan/errors.hpp"

namespace shelfplan {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

Point2 point_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(std::string(where) + ": expected [x,y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

json path_to_json(const MotionPath& path) {
  json out = json::array();
  for (const Point2& p : path.waypoints) out.push_back(point_to_json(p));
  return out;
}

MotionPath path_from_json(const json& j, PathPhase phase, int carried, const char* where) {
  MotionPath path;
  path.phase = phase;
  path.carried_object = carried;
  if (!j.is_array()) throw ParseError(std::string(where) + ": expected a waypoint array");
  for (const auto& wp : j) path.waypoints.push_back(point_from_json(wp, where));
  return path;
}

}  // namespace

json world_to_json(const WorldSpec& world) {
  return json{{"workspace",
               {world.workspace.min.x, world.workspace.min.y, world.workspace.max.x,
                world.workspace.max.y}},
              {"object_radius", world.object_radius},
              {"gripper_radius", world.gripper_radius},
              {"wrist_length", world.wrist_length},
              {"grid_resolution", world.grid_resolution},
              {"grasp_count", world.grasp_count}};
}

WorldSpec world_from_json(const json& j) {
  WorldSpec w;
  const json& ws = require(j, "workspace", "world");
  if (!ws.is_array() || ws.size() != 4) throw ParseError("world: workspace must be [x0,y0,x1,y1]");
  w.workspace = {{ws[0].get<double>(), ws[1].get<double>()},
                 {ws[2].get<double>(), ws[3].get<double>()}};
  w.object_radius = require(j, "object_radius", "world").get<double>();
  w.gripper_radius = require(j, "gripper_radius", "world").get<double>();
  w.wrist_length = require(j, "wrist_length", "world").get<double>();
  w.grid_resolution = require(j, "grid_resolution", "world").get<double>();
  w.grasp_count = require(j, "grasp_count", "world").get<int>();
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("world: ") + e.what());
  }
  return w;
}

json instance_to_json(const Instance& instance) {
  json start = json::object();
  json goal = json::object();
  for (int i = 0; i < instance.object_count(); ++i) {
    start[instance.object_names[i]] = point_to_json(instance.start[i]);
    goal[instance.object_names[i]] = point_to_json(instance.goal[i]);
  }
  return json{{"world", world_to_json(instance.world)},
              {"objects", instance.object_names},
              {"start", start},
              {"goal", goal}};
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.world = world_from_json(require(j, "world", "instance"));
  const json& objects = require(j, "objects", "instance");
  if (!objects.is_array() || objects.empty())
    throw ParseError("instance: 'objects' must be a non-empty array");
  for (const auto& name : objects) inst.object_names.push_back(name.get<std::string>());
  const json& start = require(j, "start", "instance");
  const json& goal = require(j, "goal", "instance");
  for (const std::string& name : inst.object_names) {
    if (!start.contains(name)) throw ParseError("instance: start is missing object '" + name + "'");
    if (!goal.contains(name)) throw ParseError("instance: goal is missing object '" + name + "'");
    inst.start.positions.push_back(point_from_json(start[name], "instance.start"));
    inst.goal.positions.push_back(point_from_json(goal[name], "instance.goal"));
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return inst;
}

namespace {

json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw IOFailureError(std::string("cannot open ") + what + " file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOFailureError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IOFailureError("failed while writing: " + path);
}

}  // namespace

void save_instance(const Instance& instance, const std::string& path) {
  write_json_file(instance_to_json(instance), path);
}

Instance load_instance(const std::string& path) {
  return instance_from_json(read_json_file(path, "instance"));
}

WorldSpec load_world(const std::string& path) {
  const json j = read_json_file(path, "world");
  // Accept either a bare world object or a {"world": {...}} wrapper.
  if (j.contains("world")) return world_from_json(j["world"]);
  return world_from_json(j);
}

PlannerConfig planner_config_from_json(const json& j) {
  PlannerConfig cfg;
  if (j.contains("planner")) {
    const std::string kind = j["planner"].get<std::string>();
    if (kind == "grid")
      cfg.kind = PlannerKind::Grid;
    else if (kind == "roadmap")
      cfg.kind = PlannerKind::Roadmap;
    else
      throw ParseError("planner config: unknown planner '" + kind + "'");
  }
  if (j.contains("grid_factor")) cfg.grid_factor = j["grid_factor"].get<int>();
  if (j.contains("roadmap_samples")) cfg.roadmap_samples = j["roadmap_samples"].get<int>();
  if (j.contains("roadmap_seed")) cfg.roadmap_seed = j["roadmap_seed"].get<std::uint64_t>();
  return cfg;
}

json stats_to_json(const SolveStats& stats) {
  return json{{"planner_calls", stats.planner_calls},
              {"collision_checks", stats.collision_checks},
              {"verify_ms", stats.verify_ms},
              {"other_ms", stats.other_ms()},
              {"total_ms", stats.total_ms},
              {"nodes", stats.nodes_created},
              {"trimmed_nodes", stats.nodes_trimmed},
              {"forward_check_rejections", stats.forward_check_rejections},
              {"edges_verified", stats.edges_verified},
              {"failed_verifications", stats.failed_verifications},
              {"perturbations", stats.perturbations},
              {"buffers_used", stats.buffers_used}};
}

json plan_to_json(const Plan& plan, const Instance& instance, const SolveStats& stats) {
  json actions = json::array();
  for (const PlanAction& a : plan.actions) {
    actions.push_back(json{{"object", instance.object_names[a.object]},
                           {"from", point_to_json(a.from)},
                           {"to", point_to_json(a.to)},
                           {"kind", a.kind == EdgeKind::GoalMove ? "goal" : "buffer"},
                           {"transit", path_to_json(a.transit)},
                           {"transfer", path_to_json(a.transfer)}});
  }
  return json{{"actions", actions},
              {"buffers_used", plan.buffers_used},
              {"stats", stats_to_json(stats)}};
}

Plan plan_from_json(const json& j, const Instance& instance) {
  Plan plan;
  const json& actions = require(j, "actions", "plan");
  for (const auto& ja : actions) {
    PlanAction a;
    const std::string name = require(ja, "object", "plan.action").get<std::string>();
    a.object = instance.object_index(name);
    if (a.object < 0) throw ParseError("plan: unknown object '" + name + "'");
    a.from = point_from_json(require(ja, "from", "plan.action"), "plan.action.from");
    a.to = point_from_json(require(ja, "to", "plan.action"), "plan.action.to");
    const std::string kind = require(ja, "kind", "plan.action").get<std::string>();
    if (kind == "goal")
      a.kind = EdgeKind::GoalMove;
    else if (kind == "buffer")
      a.kind = EdgeKind::BufferMove;
    else
      throw ParseError("plan: unknown action kind '" + kind + "'");
    a.transit = path_from_json(require(ja, "transit", "plan.action"), PathPhase::Transit, -1,
                               "plan.action.transit");
    a.transfer = path_from_json(require(ja, "transfer", "plan.action"), PathPhase::Transfer,
                                a.object, "plan.action.transfer");
    plan.actions.push_back(std::move(a));
  }
  plan.buffers_used = j.value("buffers_used", 0);
  return plan;
}

void save_plan(const Plan& plan, const Instance& instance, const SolveStats& stats,
               const std::string& path) {
  write_json_file(plan_to_json(plan, instance, stats), path);
}

Plan load_plan(const std::string& path, const Instance& instance) {
  return plan_from_json(read_json_file(path, "plan"), instance);
}

json constraints_to_json(const ConstraintStore& store, const Instance& instance) {
  json out = json::object();
  for (int o = 0; o < static_cast<int>(store.per_object.size()); ++o) {
    json clauses = json::array();
    for (const BlockClause& clause : store.per_object[o]) {
      json lits = json::array();
      for (const OccupancyLiteral& lit : clause.literals)
        lits.push_back(json::array({lit.kind == OccupancyKind::AtStart ? "S" : "G",
                                    instance.object_names[lit.object]}));
      clauses.push_back(std::move(lits));
    }
    out[instance.object_names[o]] = std::move(clauses);
  }
  return out;
}

Budget budget_from_json(const json& j) {
  Budget b;
  if (j.contains("wall_s")) b.wall_seconds = j["wall_s"].get<double>();
  if (j.contains("max_calls")) b.max_planner_calls = j["max_calls"].get<std::uint64_t>();
  if (j.contains("max_perturbations"))
    b.max_perturbations = j["max_perturbations"].get<std::uint64_t>();
  return b;
}

}  // namespace shelfplan
