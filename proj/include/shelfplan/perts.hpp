#pragma once

#include <optional>
#include <random>
#include <string>

#include "shelfplan/monotone.hpp"

namespace shelfplan {

/// How a local lazy tree is folded into the global tree: keep only its
/// verified part (greedy), verify everything first (conservative), or keep
/// it as-is and verify branches on demand (hybrid).
enum class ConcatPolicy { Greedy, Conservative, Hybrid };

ConcatPolicy policy_from_string(const std::string& name);
std::string to_string(ConcatPolicy policy);

struct PertsOptions {
  ConcatPolicy policy = ConcatPolicy::Hybrid;
  MonotoneSolver local_solver = MonotoneSolver::Lrs;
  Budget budget;
  std::uint64_t seed = 0;
  bool perturb_goal_placed = true;  // perturbations may displace goal-placed objects
  SolverOptions local_options;
};

struct PertsResult {
  bool solved = false;
  bool timed_out = false;
  std::optional<Plan> plan;
  SearchTree tree{true};  // the global tree, kept for inspection
  SolveStats stats;
};

struct Perturbation {
  int object = -1;
  Point2 buffer;
  PickPlaceResult paths;
};

/// Uniform over the live nodes of the tree.
int select_node(const SearchTree& tree, std::mt19937_64& rng);

/// One perturbation attempt at `node`: a uniformly chosen object to a
/// uniformly chosen free grid cell, motion-planned through `verifier`.
/// Any failure (no candidate, duplicate arrangement, no path) returns
/// nullopt and the caller restarts.
std::optional<Perturbation> perturb_node(const SearchTree& tree, int node,
                                         const Instance& instance, const PositionGrid& grid,
                                         EdgeVerifier& verifier, std::mt19937_64& rng,
                                         bool allow_goal_placed);

/// Ordered actions along the verified branch from the root to `goal_node`.
/// Throws BranchNotVerifiedError if any edge on it is unverified.
Plan trace_back_path(const SearchTree& tree, int goal_node, const Instance& instance);

/// Perturbation search: alternate local monotone solves with random buffer
/// moves until the final arrangement joins the global tree.
PertsResult perts_solve(const Instance& instance, const PlannerConfig& planner_config = {},
                        const PertsOptions& options = {});

PertsResult perts_solve(const Instance& instance, EdgeVerifier& verifier,
                        const PertsOptions& options = {});

}  // namespace shelfplan
