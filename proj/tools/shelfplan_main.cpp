#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shelfplan/bench.hpp"
#include "shelfplan/errors.hpp"
#include "shelfplan/json_io.hpp"
#include "shelfplan/svg.hpp"
#include "shelfplan/validate.hpp"

namespace fs = std::filesystem;
using namespace shelfplan;

namespace {

struct PlannerArgs {
  std::string planner = "grid";
  int grid_factor = 4;
  int roadmap_samples = 2000;
  std::uint64_t roadmap_seed = 1;

  PlannerConfig config() const {
    PlannerConfig cfg;
    cfg.kind = planner == "roadmap" ? PlannerKind::Roadmap : PlannerKind::Grid;
    cfg.grid_factor = grid_factor;
    cfg.roadmap_samples = roadmap_samples;
    cfg.roadmap_seed = roadmap_seed;
    return cfg;
  }
};

void add_planner_flags(CLI::App* cmd, PlannerArgs& args) {
  cmd->add_option("--planner", args.planner, "Motion planner: grid or roadmap")
      ->check(CLI::IsMember({"grid", "roadmap"}));
  cmd->add_option("--grid-factor", args.grid_factor, "A* lattice step = grid_resolution / factor");
  cmd->add_option("--roadmap-samples", args.roadmap_samples, "Roadmap sample count");
  cmd->add_option("--roadmap-seed", args.roadmap_seed, "Roadmap sampling seed");
}

int cmd_generate(const std::string& world_path, int n, int count, std::uint64_t seed,
                 const std::string& out_dir, const std::string& filter,
                 const PlannerArgs& planner_args, double classify_budget_s) {
  const WorldSpec world = world_path.empty() ? default_world() : load_world(world_path);
  fs::create_directories(out_dir);
  Budget classify_budget;
  classify_budget.wall_seconds = classify_budget_s;
  int written = 0;
  std::uint64_t sub = 0;
  while (written < count) {
    if (sub > static_cast<std::uint64_t>(count) * 500)
      throw SamplingExhaustedError("generate: filter rejected too many candidates");
    const std::uint64_t s = seed + sub++;
    const Instance inst = sample_instance(world, n, s);
    if (filter != "any") {
      const InstanceClass cls =
          classify_instance(inst, planner_args.config(), classify_budget, s + 1);
      if (filter == "monotone_only" && cls != InstanceClass::Monotone) continue;
      if (filter == "nonmonotone_only" && cls != InstanceClass::NonMonotone) continue;
    }
    char name[64];
    std::snprintf(name, sizeof(name), "inst_n%d_s%" PRIu64 ".json", n, s);
    const fs::path path = fs::path(out_dir) / name;
    save_instance(inst, path.string());
    std::cout << path.string() << "\n";
    ++written;
  }
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& solver,
              const std::string& policy, double budget_s, std::uint64_t max_calls,
              std::uint64_t max_perturbations, std::uint64_t seed, const std::string& plan_path,
              const std::string& constraints_path, bool monotone_only, bool validate,
              const PlannerArgs& planner_args) {
  const Instance instance = load_instance(instance_path);
  Budget budget;
  budget.wall_seconds = budget_s;
  budget.max_planner_calls = max_calls;
  budget.max_perturbations = max_perturbations;

  if (!constraints_path.empty()) {
    const ConstraintStore store =
        obtain_constraints(instance.world, instance.start, instance.goal);
    std::ofstream out(constraints_path);
    out << constraints_to_json(store, instance).dump(2) << "\n";
  }

  bool solved = false;
  SolveStats stats;
  Plan plan;
  if (monotone_only) {
    SolverOptions options;
    options.budget = budget;
    const SolveOutcome outcome = solve_monotone(monotone_solver_from_string(solver), instance,
                                                planner_args.config(), options);
    solved = outcome.solved;
    stats = outcome.stats;
    if (solved) plan = plan_from_branch(outcome.tree, outcome.solution_branch, instance);
  } else {
    PertsOptions options;
    options.policy = policy_from_string(policy);
    options.local_solver = monotone_solver_from_string(solver);
    options.budget = budget;
    options.seed = seed;
    const PertsResult result = perts_solve(instance, planner_args.config(), options);
    solved = result.solved;
    stats = result.stats;
    if (solved) plan = *result.plan;
  }

  std::cout << (solved ? "solved" : "unsolved") << " planner_calls=" << stats.planner_calls
            << " verify_ms=" << stats.verify_ms << " other_ms=" << stats.other_ms()
            << " buffers=" << stats.buffers_used << "\n";
  if (solved && !plan_path.empty()) save_plan(plan, instance, stats, plan_path);
  if (solved && validate) {
    const auto problems = validate_plan(instance, plan);
    for (const auto& p : problems) std::cerr << "validation: " << p << "\n";
    if (!problems.empty()) return 2;
    std::cout << "plan validated: " << plan.actions.size() << " actions\n";
  }
  return solved ? 0 : 1;
}

int cmd_bench(const std::string& suite_path, const std::string& csv_path) {
  const SuiteSpec spec = load_suite(suite_path);
  const SuiteResult result = run_suite(spec);
  const std::string csv = records_to_csv(result.records);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw IOFailureError("cannot open for writing: " + csv_path);
    out << csv;
  } else {
    std::cout << csv;
  }
  std::fprintf(stderr, "%-8s %-12s %3s %6s %9s %12s %12s %10s %8s\n", "solver", "policy", "n",
               "runs", "success", "total_ms", "verify_ms", "calls", "buffers");
  for (const SummaryRow& s : result.summary)
    std::fprintf(stderr, "%-8s %-12s %3d %6d %8.1f%% %12.2f %12.2f %10.1f %8.2f\n",
                 s.solver.c_str(), s.policy.c_str(), s.n, s.runs, 100.0 * s.success_rate,
                 s.mean_total_ms, s.mean_verify_ms, s.mean_planner_calls, s.mean_buffers);
  return 0;
}

int cmd_render(const std::string& instance_path, const std::string& plan_path,
               const std::string& out_path) {
  const Instance instance = load_instance(instance_path);
  if (plan_path.empty()) {
    render_svg_file(instance, nullptr, out_path);
  } else {
    const Plan plan = load_plan(plan_path, instance);
    render_svg_file(instance, &plan, out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shelfplan: object rearrangement planning in side-accessed workspaces"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Sample rearrangement instances");
  std::string gen_world, gen_out = ".", gen_filter = "any";
  int gen_n = 6, gen_count = 1;
  std::uint64_t gen_seed = 0;
  double gen_classify_budget = 10.0;
  PlannerArgs gen_planner;
  generate->add_option("--world", gen_world, "World spec JSON (defaults to the built-in world)");
  generate->add_option("--n", gen_n, "Objects per instance")->required();
  generate->add_option("--count", gen_count, "Number of instances");
  generate->add_option("--seed", gen_seed, "Base RNG seed");
  generate->add_option("--out", gen_out, "Output directory");
  generate->add_option("--filter", gen_filter, "any | monotone_only | nonmonotone_only")
      ->check(CLI::IsMember({"any", "monotone_only", "nonmonotone_only"}));
  generate->add_option("--classify-budget", gen_classify_budget,
                       "Seconds per classification when filtering");
  add_planner_flags(generate, gen_planner);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  std::string sol_instance, sol_solver = "lrs", sol_policy = "hybrid", sol_plan;
  std::string sol_constraints;
  double sol_budget = 30.0;
  std::uint64_t sol_max_calls = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t sol_max_pert = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t sol_seed = 0;
  bool sol_monotone_only = false, sol_validate = false;
  PlannerArgs sol_planner;
  solve->add_option("--instance", sol_instance, "Instance JSON")->required();
  solve->add_option("--solver", sol_solver, "mrs | dfsdp | cirs | lrs")
      ->check(CLI::IsMember({"mrs", "dfsdp", "cirs", "lrs"}));
  solve->add_option("--policy", sol_policy, "greedy | conservative | hybrid")
      ->check(CLI::IsMember({"greedy", "conservative", "hybrid"}));
  solve->add_option("--budget", sol_budget, "Wall-clock budget in seconds");
  solve->add_option("--max-calls", sol_max_calls, "Planner-call cap");
  solve->add_option("--max-perturbations", sol_max_pert, "Perturbation cap");
  solve->add_option("--seed", sol_seed, "Global-planner RNG seed");
  solve->add_option("--plan", sol_plan, "Write the solution plan JSON here");
  solve->add_option("--dump-constraints", sol_constraints,
                    "Write the reachability-constraint container JSON here");
  solve->add_flag("--monotone-only", sol_monotone_only,
                  "Run only the local monotone solver, no perturbations");
  solve->add_flag("--validate", sol_validate, "Replay-check the plan before exiting");
  add_planner_flags(solve, sol_planner);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  std::string bench_suite, bench_csv;
  bench->add_option("--suite", bench_suite, "Suite spec JSON")->required();
  bench->add_option("--csv", bench_csv, "CSV output path (stdout when omitted)");

  // render
  auto* render = app.add_subcommand("render", "Render an instance (and plan) to SVG");
  std::string ren_instance, ren_plan, ren_out;
  render->add_option("--instance", ren_instance, "Instance JSON")->required();
  render->add_option("--plan", ren_plan, "Plan JSON");
  render->add_option("--out", ren_out, "SVG output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return cmd_generate(gen_world, gen_n, gen_count, gen_seed, gen_out, gen_filter, gen_planner,
                          gen_classify_budget);
    if (solve->parsed())
      return cmd_solve(sol_instance, sol_solver, sol_policy, sol_budget, sol_max_calls,
                       sol_max_pert, sol_seed, sol_plan, sol_constraints, sol_monotone_only,
                       sol_validate, sol_planner);
    if (bench->parsed()) return cmd_bench(bench_suite, bench_csv);
    if (render->parsed()) return cmd_render(ren_instance, ren_plan, ren_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
