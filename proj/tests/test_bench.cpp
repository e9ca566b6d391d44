#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "shelfplan/bench.hpp"
#include "shelfplan/json_io.hpp"
#include "shelfplan/svg.hpp"

using namespace shelfplan;
using shelfplan::testing::make_instance;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

WorldSpec easy_world() {
  WorldSpec w;
  w.workspace = {{0.0, 0.0}, {20.0, 12.0}};
  w.object_radius = 0.5;
  w.gripper_radius = 0.4;
  w.wrist_length = 0.5;
  w.grid_resolution = 2.0;
  w.grasp_count = 1;
  return w;
}

}  // namespace

TEST_CASE("classify_instance distinguishes the three classes") {
  Budget budget;
  budget.max_planner_calls = 50000;
  budget.max_perturbations = 500;

  const Instance free_one = make_instance(default_world(), {{5.1, 4.3}}, {{9.0, 7.0}});
  CHECK(classify_instance(free_one, {}, budget, 1) == InstanceClass::Monotone);

  CHECK(classify_instance(testing::swap_instance(), {}, budget, 1) == InstanceClass::NonMonotone);

  // an object pinned against the wall by a fat gripper can never be handled
  const Instance stuck =
      make_instance(testing::corridor_world(), {{0.52, 4.0}}, {{3.0, 1.0}});
  CHECK(classify_instance(stuck, {}, budget, 1) == InstanceClass::Unsolved);
}

TEST_CASE("small all-lrs suite solves everything") {
  SuiteSpec spec;
  spec.world = easy_world();
  spec.object_counts = {3};
  spec.instances_per_count = 5;
  spec.seed_base = 11;
  spec.budget.max_planner_calls = 100000;
  spec.solvers = {solver_choice_from_string("lrs")};
  const SuiteResult result = run_suite(spec);
  REQUIRE(result.records.size() == 5);
  for (const RunRecord& r : result.records) CHECK(r.solved);
  REQUIRE(result.summary.size() == 1);
  CHECK(result.summary[0].success_rate == doctest::Approx(1.0));
}

TEST_CASE("paired suite reproduces the planner-call ordering") {
  SuiteSpec spec;
  spec.object_counts = {3, 4};
  spec.instances_per_count = 12;
  spec.seed_base = 500;
  spec.budget.max_planner_calls = 200000;
  spec.solvers = {solver_choice_from_string("mrs"), solver_choice_from_string("dfsdp"),
                  solver_choice_from_string("cirs"), solver_choice_from_string("lrs")};
  const SuiteResult result = run_suite(spec);
  double mean[4] = {0, 0, 0, 0};
  int count[4] = {0, 0, 0, 0};
  auto slot = [](const std::string& s) {
    if (s == "lrs") return 0;
    if (s == "cirs") return 1;
    if (s == "dfsdp") return 2;
    return 3;
  };
  for (const RunRecord& r : result.records) {
    mean[slot(r.solver)] += static_cast<double>(r.planner_calls);
    ++count[slot(r.solver)];
  }
  for (int i = 0; i < 4; ++i) mean[i] /= count[i];
  CHECK(mean[0] <= mean[1]);  // lrs <= cirs
  CHECK(mean[1] <= mean[2]);  // cirs <= dfsdp
  CHECK(mean[2] <= mean[3]);  // dfsdp <= mrs
}

TEST_CASE("csv round-trip preserves records and summary") {
  SuiteSpec spec;
  spec.world = easy_world();
  spec.object_counts = {2, 3};
  spec.instances_per_count = 3;
  spec.seed_base = 77;
  spec.budget.max_planner_calls = 100000;
  spec.solvers = {solver_choice_from_string("lrs"), solver_choice_from_string("lrs:hybrid")};
  const SuiteResult result = run_suite(spec);

  const std::string csv = records_to_csv(result.records);
  const auto parsed = records_from_csv(csv);
  REQUIRE(parsed.size() == result.records.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].instance_id == result.records[i].instance_id);
    CHECK(parsed[i].solver == result.records[i].solver);
    CHECK(parsed[i].policy == result.records[i].policy);
    CHECK(parsed[i].n == result.records[i].n);
    CHECK(parsed[i].solved == result.records[i].solved);
    CHECK(parsed[i].total_ms == result.records[i].total_ms);  // %.17g round-trips
    CHECK(parsed[i].planner_calls == result.records[i].planner_calls);
  }
  const auto resummarized = summarize(parsed);
  REQUIRE(resummarized.size() == result.summary.size());
  for (std::size_t i = 0; i < resummarized.size(); ++i) {
    CHECK(resummarized[i].solver == result.summary[i].solver);
    CHECK(resummarized[i].success_rate == result.summary[i].success_rate);
    CHECK(resummarized[i].mean_total_ms == result.summary[i].mean_total_ms);
    CHECK(resummarized[i].mean_planner_calls == result.summary[i].mean_planner_calls);
  }
}

TEST_CASE("suite output is deterministic modulo timing columns") {
  const std::string spec_json = R"({
    "object_counts": [3],
    "instances_per_count": 4,
    "seed_base": 900,
    "budget": {"max_calls": 100000, "max_perturbations": 500},
    "solvers": ["lrs", "cirs", "lrs:hybrid"]
  })";
  const SuiteSpec spec = suite_from_json(nlohmann::json::parse(spec_json));
  const std::string a = csv_without_timing(records_to_csv(run_suite(spec).records));
  const std::string b = csv_without_timing(records_to_csv(run_suite(spec).records));
  CHECK(a == b);

  SuiteSpec parallel = spec;
  parallel.jobs = 2;
  const std::string c = csv_without_timing(records_to_csv(run_suite(parallel).records));
  CHECK(a == c);
}

TEST_CASE("svg rendering has the expected structure") {
  const Instance inst = sample_instance(default_world(), 4, 2020);
  const std::string scene = render_svg(inst, nullptr);
  const int grid_dots = static_cast<int>(build_grid(inst.world).positions.size());
  CHECK(count_occurrences(scene, "<circle") == grid_dots + 2 * 4);  // starts + goals
  CHECK(count_occurrences(scene, "class=\"action\"") == 0);

  Plan empty;
  CHECK(render_svg(inst, &empty) == scene);

  SolverOptions options;
  const SolveOutcome outcome = solve_monotone(MonotoneSolver::Lrs, inst, {}, options);
  if (outcome.solved) {
    const Plan plan = plan_from_branch(outcome.tree, outcome.solution_branch, inst);
    const std::string with_plan = render_svg(inst, &plan);
    CHECK(count_occurrences(with_plan, "class=\"action\"") ==
          static_cast<int>(plan.actions.size()));
    CHECK(count_occurrences(with_plan, "class=\"transfer\"") ==
          static_cast<int>(plan.actions.size()));
  }
}

TEST_CASE("constraint dump lists clauses per object") {
  const Instance inst = testing::crowded_corridor_instance();
  const ConstraintStore store = obtain_constraints(inst.world, inst.start, inst.goal);
  const nlohmann::json dump = constraints_to_json(store, inst);
  REQUIRE(dump.contains("o5"));
  REQUIRE(dump["o5"].size() == 2);
  // o5's clauses are {G2} and {G4}
  CHECK(dump["o5"][0][0][0] == "G");
  CHECK(dump["o5"][0][0][1] == "o2");
  CHECK(dump["o2"].size() == 1);
  CHECK(dump["o2"][0][0][0] == "S");
  CHECK(dump["o2"][0][0][1] == "o5");
}
