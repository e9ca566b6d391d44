#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "shelfplan/constraints.hpp"
#include "shelfplan/plan.hpp"
#include "shelfplan/tree.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

struct Budget {
  double wall_seconds = std::numeric_limits<double>::infinity();
  std::uint64_t max_planner_calls = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_perturbations = std::numeric_limits<std::uint64_t>::max();
};

/// Deadline for a wall-clock budget; anything beyond ~3 years is "never".
inline std::chrono::steady_clock::time_point deadline_after(double seconds) {
  if (!(seconds < 1e8)) return std::chrono::steady_clock::time_point::max();
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(seconds < 0 ? 0.0 : seconds));
}

struct SolveStats {
  std::uint64_t planner_calls = 0;
  std::uint64_t collision_checks = 0;
  std::uint64_t nodes_created = 0;
  std::uint64_t nodes_trimmed = 0;
  std::uint64_t forward_check_rejections = 0;
  std::uint64_t edges_verified = 0;        // uncached verifications that passed
  std::uint64_t failed_verifications = 0;  // uncached verifications that failed
  std::uint64_t cache_hit_success = 0;
  std::uint64_t cache_hit_fail = 0;
  std::uint64_t perturbations = 0;
  std::uint64_t buffers_used = 0;
  double verify_ms = 0.0;
  double total_ms = 0.0;

  double other_ms() const { return total_ms - verify_ms; }
};

enum class MonotoneSolver { Mrs, DfsDp, Cirs, Lrs };

MonotoneSolver monotone_solver_from_string(const std::string& name);
std::string to_string(MonotoneSolver solver);

struct SolverOptions {
  Budget budget;
  bool randomize_order = false;  // seeded-random child order instead of ascending ids
  std::uint64_t order_seed = 0;
  bool validate_each_step = false;  // run tree.validate() after every mutation
  ConstraintOptions constraints;
};

struct SolveOutcome {
  SearchTree tree{true};
  bool solved = false;
  bool timed_out = false;
  std::vector<int> solution_branch;  // node ids, root..goal node
  SolveStats stats;
  std::vector<std::pair<int, int>> expansion_log;  // (parent node id, object)
};

/// Solve the local monotone task `from` -> instance goal with the chosen
/// solver, funnelling every path verification through `verifier`.
SolveOutcome solve_monotone(MonotoneSolver which, const Instance& instance,
                            const Arrangement& from, EdgeVerifier& verifier,
                            const SolverOptions& options = {});

/// Convenience overload from the instance start with a private planner.
/// The edge cache is enabled only for the lazy solver; the baselines pay for
/// every edge they touch.
SolveOutcome solve_monotone(MonotoneSolver which, const Instance& instance,
                            const PlannerConfig& planner_config = {},
                            const SolverOptions& options = {});

/// Solution branch of a solved outcome as an executable plan.
Plan plan_from_branch(const SearchTree& tree, const std::vector<int>& branch,
                      const Instance& instance);

}  // namespace shelfplan
