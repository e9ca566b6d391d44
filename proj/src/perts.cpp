#include "shelfplan/perts.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "shelfplan/errors.hpp"

namespace shelfplan {

ConcatPolicy policy_from_string(const std::string& name) {
  if (name == "greedy") return ConcatPolicy::Greedy;
  if (name == "conservative") return ConcatPolicy::Conservative;
  if (name == "hybrid") return ConcatPolicy::Hybrid;
  throw std::invalid_argument("unknown policy '" + name + "' (greedy|conservative|hybrid)");
}

std::string to_string(ConcatPolicy policy) {
  switch (policy) {
    case ConcatPolicy::Greedy: return "greedy";
    case ConcatPolicy::Conservative: return "conservative";
    case ConcatPolicy::Hybrid: return "hybrid";
  }
  return "?";
}

int select_node(const SearchTree& tree, std::mt19937_64& rng) {
  const auto ids = tree.live_ids();
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  return ids[pick(rng)];
}

std::optional<Perturbation> perturb_node(const SearchTree& tree, int node,
                                         const Instance& instance, const PositionGrid& grid,
                                         EdgeVerifier& verifier, std::mt19937_64& rng,
                                         bool allow_goal_placed) {
  const Arrangement& at = tree.node(node).arrangement;
  std::vector<int> objects;
  for (int o = 0; o < at.size(); ++o) {
    if (!allow_goal_placed && same_position(at[o], instance.goal[o])) continue;
    objects.push_back(o);
  }
  if (objects.empty()) return std::nullopt;
  const int object = objects[std::uniform_int_distribution<std::size_t>(0, objects.size() - 1)(rng)];

  // Free cells other than the object's current spot and its own goal; a move
  // to the goal is the local solver's job, not a perturbation.
  std::vector<Point2> buffers;
  for (const Point2& cell : grid.positions) {
    if (same_position(cell, at[object]) || same_position(cell, instance.goal[object])) continue;
    if (!placement_free(at, object, cell, instance.world)) continue;
    buffers.push_back(cell);
  }
  if (buffers.empty()) return std::nullopt;
  const Point2 buffer =
      buffers[std::uniform_int_distribution<std::size_t>(0, buffers.size() - 1)(rng)];

  Arrangement perturbed = at;
  perturbed.positions[object] = buffer;
  if (tree.contains(perturbed)) return std::nullopt;  // been there already

  const auto& result = verifier.verify(at, perturbed);
  if (!result.has_value()) return std::nullopt;
  return Perturbation{object, buffer, *result};
}

Plan trace_back_path(const SearchTree& tree, int goal_node, const Instance& instance) {
  return plan_from_branch(tree, tree.path_from_root(goal_node), instance);
}

namespace {

using Clock = std::chrono::steady_clock;

struct GlobalRun {
  const Instance& instance;
  EdgeVerifier& verifier;
  const PertsOptions& options;
  Clock::time_point t0;
  Clock::time_point deadline;
  std::uint64_t call_cap = 0;
  SolveStats stats;
  bool timed_out = false;

  bool exhausted() const {
    return Clock::now() >= deadline || verifier.motion.planner_calls >= call_cap ||
           stats.perturbations >= options.budget.max_perturbations;
  }
  double remaining_seconds() const {
    return std::chrono::duration<double>(deadline - Clock::now()).count();
  }
};

// Fold a local tree into the global one under `attach`, whose arrangement
// equals the local root's. Duplicated arrangements are not re-added; the
// local children graft onto the existing node instead.
void concatenate(GlobalRun& run, SearchTree& global, int attach, const SearchTree& local,
                 ConcatPolicy policy) {
  std::unordered_map<int, int> to_global;
  to_global[local.root()] = attach;
  // Depth-first, preserving child order for determinism.
  std::vector<int> stack;
  const TreeNode& lroot = local.node(local.root());
  for (auto it = lroot.children.rbegin(); it != lroot.children.rend(); ++it) stack.push_back(*it);
  while (!stack.empty()) {
    const int lid = stack.back();
    stack.pop_back();
    const TreeNode& lnode = local.node(lid);
    auto parent_it = to_global.find(lnode.parent);
    if (parent_it == to_global.end()) continue;  // parent was dropped
    const int gparent = parent_it->second;

    bool verified = lnode.edge_status == EdgeStatus::Verified;
    std::optional<EdgePaths> paths = lnode.edge_paths;
    if (!verified) {
      if (policy == ConcatPolicy::Greedy) continue;  // drop unverified subtree
      if (policy == ConcatPolicy::Conservative) {
        if (run.exhausted()) {
          run.timed_out = true;
          continue;
        }
        const auto& outcome = run.verifier.verify(local.node(lnode.parent).arrangement,
                                                  lnode.arrangement);
        if (!outcome.has_value()) continue;  // infeasible edge, drop subtree
        verified = true;
        paths = EdgePaths{outcome->transit, outcome->transfer};
      }
    }

    int gid = global.find(lnode.arrangement);
    if (gid == -1) {
      gid = global.add_node(lnode.arrangement, gparent, lnode.moved_object, lnode.edge_kind);
      ++run.stats.nodes_created;
      if (verified && paths) global.mark_verified(gid, *paths);
    }
    to_global[lid] = gid;
    for (auto it = lnode.children.rbegin(); it != lnode.children.rend(); ++it)
      stack.push_back(*it);
  }
}

void run_local_and_concat(GlobalRun& run, SearchTree& global, int attach) {
  SolverOptions local = run.options.local_options;
  local.budget = run.options.budget;
  local.budget.wall_seconds = run.remaining_seconds();
  const std::uint64_t used = run.verifier.motion.planner_calls;
  local.budget.max_planner_calls = run.call_cap > used ? run.call_cap - used : 0;

  SolveOutcome outcome = solve_monotone(run.options.local_solver, run.instance,
                                        global.node(attach).arrangement, run.verifier, local);
  run.timed_out |= outcome.timed_out;
  run.stats.nodes_trimmed += outcome.stats.nodes_trimmed;
  run.stats.forward_check_rejections += outcome.stats.forward_check_rejections;
  concatenate(run, global, attach, outcome.tree, run.options.policy);
}

}  // namespace

PertsResult perts_solve(const Instance& instance, EdgeVerifier& verifier,
                        const PertsOptions& options) {
  GlobalRun run{instance, verifier, options, Clock::now(), {}, 0, {}, false};
  run.deadline = deadline_after(options.budget.wall_seconds);
  const MotionStats motion_before = verifier.motion;
  const std::uint64_t verified_before = verifier.edges_verified;
  const std::uint64_t failed_before = verifier.failed_verifications;
  const std::uint64_t hit_ok_before = verifier.cache_hit_success;
  const std::uint64_t hit_fail_before = verifier.cache_hit_fail;
  const double verify_ms_before = verifier.verify_ms;
  const std::uint64_t used = verifier.motion.planner_calls;
  const std::uint64_t headroom = std::numeric_limits<std::uint64_t>::max() - used;
  run.call_cap = used + std::min(options.budget.max_planner_calls, headroom);

  const PositionGrid grid = build_grid(instance.world);
  std::mt19937_64 rng(options.seed);

  PertsResult result;
  result.tree = SearchTree(true);
  const int root = result.tree.init_root(instance.start);
  ++run.stats.nodes_created;

  run_local_and_concat(run, result.tree, root);

  while (true) {
    const int goal_id = result.tree.find(instance.goal);
    if (goal_id != -1) {
      // The branch is normally verified already; grafted prefixes are the
      // exception and get checked (and possibly trimmed) here.
      const VerifyBranchResult vb = verify_branch(result.tree, goal_id, verifier);
      run.stats.nodes_trimmed += vb.trimmed;
      if (vb.success) {
        result.solved = true;
        result.plan = trace_back_path(result.tree, goal_id, instance);
        break;
      }
      continue;
    }
    if (run.exhausted()) {
      run.timed_out = true;
      break;
    }

    const int candidate = select_node(result.tree, rng);
    const VerifyBranchResult vb = verify_branch(result.tree, candidate, verifier);
    run.stats.nodes_trimmed += vb.trimmed;
    if (!vb.success) continue;  // candidate unreachable; subtree trimmed, restart

    ++run.stats.perturbations;
    auto perturbation =
        perturb_node(result.tree, candidate, instance, grid, verifier, rng,
                     options.perturb_goal_placed);
    if (!perturbation) continue;

    Arrangement perturbed = result.tree.node(candidate).arrangement;
    perturbed.positions[perturbation->object] = perturbation->buffer;
    const int pert_node = result.tree.add_node(perturbed, candidate, perturbation->object,
                                               EdgeKind::BufferMove);
    ++run.stats.nodes_created;
    result.tree.mark_verified(pert_node,
                              {perturbation->paths.transit, perturbation->paths.transfer});
    run_local_and_concat(run, result.tree, pert_node);
  }

  result.timed_out = run.timed_out && !result.solved;
  result.stats = run.stats;
  result.stats.planner_calls = verifier.motion.planner_calls - motion_before.planner_calls;
  result.stats.collision_checks =
      verifier.motion.collision_checks - motion_before.collision_checks;
  result.stats.edges_verified = verifier.edges_verified - verified_before;
  result.stats.failed_verifications = verifier.failed_verifications - failed_before;
  result.stats.cache_hit_success = verifier.cache_hit_success - hit_ok_before;
  result.stats.cache_hit_fail = verifier.cache_hit_fail - hit_fail_before;
  result.stats.verify_ms = verifier.verify_ms - verify_ms_before;
  result.stats.total_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - run.t0).count();
  if (result.plan) result.stats.buffers_used = static_cast<std::uint64_t>(result.plan->buffers_used);
  return result;
}

PertsResult perts_solve(const Instance& instance, const PlannerConfig& planner_config,
                        const PertsOptions& options) {
  const MotionPlanner planner(instance.world, planner_config);
  EdgeVerifier verifier(planner, true);
  return perts_solve(instance, verifier, options);
}

}  // namespace shelfplan
