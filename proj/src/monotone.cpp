#include "shelfplan/monotone.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "shelfplan/errors.hpp"

namespace shelfplan {

MonotoneSolver monotone_solver_from_string(const std::string& name) {
  if (name == "mrs") return MonotoneSolver::Mrs;
  if (name == "dfsdp") return MonotoneSolver::DfsDp;
  if (name == "cirs") return MonotoneSolver::Cirs;
  if (name == "lrs") return MonotoneSolver::Lrs;
  throw std::invalid_argument("unknown solver '" + name + "' (mrs|dfsdp|cirs|lrs)");
}

std::string to_string(MonotoneSolver solver) {
  switch (solver) {
    case MonotoneSolver::Mrs: return "mrs";
    case MonotoneSolver::DfsDp: return "dfsdp";
    case MonotoneSolver::Cirs: return "cirs";
    case MonotoneSolver::Lrs: return "lrs";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct RunContext {
  const Instance& instance;
  EdgeVerifier& verifier;
  const SolverOptions& options;
  Clock::time_point deadline;
  std::uint64_t call_cap = 0;  // absolute threshold on verifier.motion.planner_calls
  std::mt19937_64 order_rng;
  SolveOutcome* out = nullptr;

  bool exhausted() const {
    return Clock::now() >= deadline || verifier.motion.planner_calls >= call_cap;
  }
};

std::vector<int> movable_objects(const Instance& inst, const Arrangement& a, RunContext& ctx) {
  std::vector<int> out;
  for (int o = 0; o < a.size(); ++o)
    if (!same_position(a[o], inst.goal[o])) out.push_back(o);
  if (ctx.options.randomize_order) std::shuffle(out.begin(), out.end(), ctx.order_rng);
  return out;
}

void note_expansion(RunContext& ctx, int parent, int object) {
  ctx.out->expansion_log.emplace_back(parent, object);
  ++ctx.out->stats.nodes_created;
  if (ctx.options.validate_each_step) ctx.out->tree.validate();
}

// Eager depth-first backtracking. With `memo` null this is the factorial
// baseline re-verifying every edge of every ordering; with a memo it expands
// each arrangement state once. `store` null disables forward checking.
bool eager_dfs(RunContext& ctx, SearchTree& tree, int node_id,
               std::unordered_set<Arrangement, ArrangementHash>* memo,
               const ConstraintStore* store) {
  const Arrangement current = tree.node(node_id).arrangement;
  for (int o : movable_objects(ctx.instance, current, ctx)) {
    if (ctx.exhausted()) {
      ctx.out->timed_out = true;
      return false;
    }
    if (store && !forward_checking(o, current, *store)) {
      ++ctx.out->stats.forward_check_rejections;
      continue;
    }
    const Point2 target = ctx.instance.goal[o];
    if (!placement_free(current, o, target, ctx.instance.world)) continue;
    Arrangement moved = current;
    moved.positions[o] = target;
    if (memo && memo->count(moved)) continue;  // known dead state, skip the edge
    const auto& result = ctx.verifier.verify(current, moved);
    if (!result.has_value()) continue;
    const int child = tree.add_node(moved, node_id, o);
    tree.mark_verified(child, {result->transit, result->transfer});
    note_expansion(ctx, node_id, o);
    if (moved == ctx.instance.goal) {
      ctx.out->solution_branch = tree.path_from_root(child);
      return true;
    }
    if (eager_dfs(ctx, tree, child, memo, store)) return true;
  }
  if (memo) memo->insert(current);
  return false;
}

// Lazy growth: children are added without verification; a branch is verified
// only when it reaches the goal arrangement. On a failed verification the
// subtree under the failing edge is trimmed and the recursion unwinds
// straight to the last accessible node, which resumes its own loop.
bool grow_local_tree(RunContext& ctx, SearchTree& tree, int node_id,
                     const ConstraintStore& store) {
  const Arrangement current = tree.node(node_id).arrangement;
  for (int o : movable_objects(ctx.instance, current, ctx)) {
    if (ctx.exhausted()) {
      ctx.out->timed_out = true;
      return false;
    }
    if (!forward_checking(o, current, store)) {
      ++ctx.out->stats.forward_check_rejections;
      continue;
    }
    const Point2 target = ctx.instance.goal[o];
    if (!placement_free(current, o, target, ctx.instance.world)) continue;
    Arrangement moved = current;
    moved.positions[o] = target;
    if (tree.contains(moved)) continue;
    const int child = tree.add_node(moved, node_id, o);
    note_expansion(ctx, node_id, o);
    if (moved == ctx.instance.goal) {
      const VerifyBranchResult vb = verify_branch(tree, child, ctx.verifier);
      ctx.out->stats.nodes_trimmed += vb.trimmed;
      if (ctx.options.validate_each_step) tree.validate();
      if (vb.success) {
        ctx.out->solution_branch = tree.path_from_root(child);
        return true;
      }
      tree.mode = SearchMode::Backjumping;
      tree.backjump_target = vb.last_accessible;
    } else {
      if (grow_local_tree(ctx, tree, child, store)) return true;
    }
    if (tree.mode == SearchMode::Backjumping) {
      if (node_id == tree.backjump_target)
        tree.mode = SearchMode::Backtracking;  // resume from alpha_last
      else
        return false;  // keep unwinding; this frame's node may be gone
    }
  }
  return false;
}

}  // namespace

SolveOutcome solve_monotone(MonotoneSolver which, const Instance& instance,
                            const Arrangement& from, EdgeVerifier& verifier,
                            const SolverOptions& options) {
  const auto t0 = Clock::now();
  const MotionStats motion_before = verifier.motion;
  const std::uint64_t verified_before = verifier.edges_verified;
  const std::uint64_t failed_before = verifier.failed_verifications;
  const std::uint64_t hit_ok_before = verifier.cache_hit_success;
  const std::uint64_t hit_fail_before = verifier.cache_hit_fail;
  const double verify_ms_before = verifier.verify_ms;

  SolveOutcome out;
  out.tree = SearchTree(which != MonotoneSolver::Mrs);
  out.tree.init_root(from);

  RunContext ctx{instance, verifier, options, {}, 0, std::mt19937_64(options.order_seed), &out};
  ctx.deadline = deadline_after(options.budget.wall_seconds);
  const std::uint64_t headroom =
      std::numeric_limits<std::uint64_t>::max() - motion_before.planner_calls;
  ctx.call_cap = motion_before.planner_calls + std::min(options.budget.max_planner_calls, headroom);

  if (from == instance.goal) {
    out.solved = true;
    out.solution_branch = {out.tree.root()};
  } else {
    switch (which) {
      case MonotoneSolver::Mrs:
        out.solved = eager_dfs(ctx, out.tree, out.tree.root(), nullptr, nullptr);
        break;
      case MonotoneSolver::DfsDp: {
        std::unordered_set<Arrangement, ArrangementHash> memo;
        out.solved = eager_dfs(ctx, out.tree, out.tree.root(), &memo, nullptr);
        break;
      }
      case MonotoneSolver::Cirs: {
        std::unordered_set<Arrangement, ArrangementHash> memo;
        const ConstraintStore store =
            obtain_constraints(instance.world, from, instance.goal, options.constraints);
        out.solved = eager_dfs(ctx, out.tree, out.tree.root(), &memo, &store);
        break;
      }
      case MonotoneSolver::Lrs: {
        const ConstraintStore store =
            obtain_constraints(instance.world, from, instance.goal, options.constraints);
        out.solved = grow_local_tree(ctx, out.tree, out.tree.root(), store);
        break;
      }
    }
  }

  SolveStats& s = out.stats;
  s.planner_calls = verifier.motion.planner_calls - motion_before.planner_calls;
  s.collision_checks = verifier.motion.collision_checks - motion_before.collision_checks;
  s.edges_verified = verifier.edges_verified - verified_before;
  s.failed_verifications = verifier.failed_verifications - failed_before;
  s.cache_hit_success = verifier.cache_hit_success - hit_ok_before;
  s.cache_hit_fail = verifier.cache_hit_fail - hit_fail_before;
  s.verify_ms = verifier.verify_ms - verify_ms_before;
  s.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return out;
}

SolveOutcome solve_monotone(MonotoneSolver which, const Instance& instance,
                            const PlannerConfig& planner_config, const SolverOptions& options) {
  const MotionPlanner planner(instance.world, planner_config);
  EdgeVerifier verifier(planner, which == MonotoneSolver::Lrs);
  return solve_monotone(which, instance, instance.start, verifier, options);
}

Plan plan_from_branch(const SearchTree& tree, const std::vector<int>& branch,
                      const Instance& instance) {
  Plan plan;
  for (std::size_t i = 1; i < branch.size(); ++i) {
    const TreeNode& child = tree.node(branch[i]);
    const TreeNode& parent = tree.node(branch[i - 1]);
    if (child.edge_status != EdgeStatus::Verified || !child.edge_paths)
      throw BranchNotVerifiedError("solution branch contains an unverified edge");
    PlanAction action;
    action.object = child.moved_object;
    action.from = parent.arrangement[child.moved_object];
    action.to = child.arrangement[child.moved_object];
    action.kind = child.edge_kind;
    action.transit = child.edge_paths->transit;
    action.transfer = child.edge_paths->transfer;
    if (action.kind == EdgeKind::BufferMove) ++plan.buffers_used;
    plan.actions.push_back(std::move(action));
  }
  (void)instance;
  return plan;
}

}  // namespace shelfplan
