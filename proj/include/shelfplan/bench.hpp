#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shelfplan/monotone.hpp"
#include "shelfplan/perts.hpp"

namespace shelfplan {

enum class InstanceClass { Monotone, NonMonotone, Unsolved };

std::string to_string(InstanceClass c);

/// Monotone if the lazy solver closes start->goal directly; non-monotone if
/// only the hybrid global planner does within budget; unsolved otherwise.
InstanceClass classify_instance(const Instance& instance, const PlannerConfig& planner_config,
                                const Budget& budget, std::uint64_t seed);

struct RunRecord {
  std::string instance_id;
  std::string solver;
  std::string policy;  // "none" for plain monotone runs
  int n = 0;
  bool solved = false;
  double total_ms = 0.0;
  double verify_ms = 0.0;
  double other_ms = 0.0;
  std::uint64_t planner_calls = 0;
  std::uint64_t buffers = 0;
  std::uint64_t seed = 0;
};

/// One solver column of a suite: a monotone solver, optionally wrapped in the
/// global planner under a concatenation policy.
struct SolverChoice {
  MonotoneSolver solver = MonotoneSolver::Lrs;
  std::optional<ConcatPolicy> policy;

  std::string label() const;
};

SolverChoice solver_choice_from_string(const std::string& text);  // "lrs" or "lrs:hybrid"

enum class SuiteFilter { Any, MonotoneOnly, NonMonotoneOnly };

struct SuiteSpec {
  WorldSpec world = default_world();
  PlannerConfig planner;
  std::vector<int> object_counts;
  int instances_per_count = 1;
  std::uint64_t seed_base = 0;
  Budget budget;
  Budget classify_budget;  // used by the filter and for classification seeds
  std::uint64_t classify_seed = 9999;
  std::vector<SolverChoice> solvers;
  SuiteFilter filter = SuiteFilter::Any;
  int jobs = 1;
  int max_candidates_per_slot = 200;  // resampling attempts when filtering
};

SuiteSpec suite_from_json(const nlohmann::json& j);
SuiteSpec load_suite(const std::string& path);

struct SummaryRow {
  std::string solver;
  std::string policy;
  int n = 0;
  int runs = 0;
  double success_rate = 0.0;
  double mean_total_ms = 0.0;
  double mean_verify_ms = 0.0;
  double mean_other_ms = 0.0;
  double mean_planner_calls = 0.0;
  double mean_buffers = 0.0;  // over solved runs
};

struct SuiteResult {
  std::vector<RunRecord> records;  // sorted by (instance_id, solver, policy)
  std::vector<SummaryRow> summary;
};

/// Every solver sees identical instances and identical budgets. With jobs > 1
/// instances run concurrently; the sorted records make the output order
/// independent of scheduling.
SuiteResult run_suite(const SuiteSpec& spec);

extern const char* kCsvHeader;

std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& csv);
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

/// CSV with the timing columns blanked, for determinism comparisons.
std::string csv_without_timing(const std::string& csv);

/// The instances a suite would run on, paired with their ids (exposed for
/// tests and for paired experiments outside run_suite).
std::vector<std::pair<std::string, Instance>> suite_instances(const SuiteSpec& spec);

}  // namespace shelfplan
