#include "shelfplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "shelfplan/errors.hpp"
#include "shelfplan/json_io.hpp"

namespace shelfplan {

std::string to_string(InstanceClass c) {
  switch (c) {
    case InstanceClass::Monotone: return "monotone";
    case InstanceClass::NonMonotone: return "nonmonotone";
    case InstanceClass::Unsolved: return "unsolved";
  }
  return "?";
}

InstanceClass classify_instance(const Instance& instance, const PlannerConfig& planner_config,
                                const Budget& budget, std::uint64_t seed) {
  SolverOptions mono_options;
  mono_options.budget = budget;
  const SolveOutcome local = solve_monotone(MonotoneSolver::Lrs, instance, planner_config,
                                            mono_options);
  if (local.solved) return InstanceClass::Monotone;

  PertsOptions global;
  global.budget = budget;
  global.seed = seed;
  const PertsResult hybrid = perts_solve(instance, planner_config, global);
  if (hybrid.solved) return InstanceClass::NonMonotone;
  return InstanceClass::Unsolved;
}

std::string SolverChoice::label() const {
  if (!policy) return to_string(solver);
  return to_string(solver) + ":" + to_string(*policy);
}

SolverChoice solver_choice_from_string(const std::string& text) {
  SolverChoice choice;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    choice.solver = monotone_solver_from_string(text);
  } else {
    choice.solver = monotone_solver_from_string(text.substr(0, colon));
    choice.policy = policy_from_string(text.substr(colon + 1));
  }
  return choice;
}

SuiteSpec suite_from_json(const nlohmann::json& j) {
  SuiteSpec spec;
  if (j.contains("world")) spec.world = world_from_json(j["world"]);
  if (j.contains("planner")) spec.planner = planner_config_from_json(j["planner"]);
  if (!j.contains("object_counts")) throw ParseError("suite: missing key 'object_counts'");
  for (const auto& v : j["object_counts"]) spec.object_counts.push_back(v.get<int>());
  spec.instances_per_count = j.value("instances_per_count", 1);
  if (spec.instances_per_count < 1) throw ParseError("suite: instances_per_count must be >= 1");
  spec.seed_base = j.value("seed_base", std::uint64_t{0});
  if (j.contains("budget")) spec.budget = budget_from_json(j["budget"]);
  spec.classify_budget = j.contains("classify_budget") ? budget_from_json(j["classify_budget"])
                                                       : spec.budget;
  spec.classify_seed = j.value("classify_seed", std::uint64_t{9999});
  if (!j.contains("solvers")) throw ParseError("suite: missing key 'solvers'");
  for (const auto& s : j["solvers"])
    spec.solvers.push_back(solver_choice_from_string(s.get<std::string>()));
  const std::string filter = j.value("filter", std::string("any"));
  if (filter == "any")
    spec.filter = SuiteFilter::Any;
  else if (filter == "monotone_only")
    spec.filter = SuiteFilter::MonotoneOnly;
  else if (filter == "nonmonotone_only")
    spec.filter = SuiteFilter::NonMonotoneOnly;
  else
    throw ParseError("suite: unknown filter '" + filter + "'");
  spec.jobs = j.value("jobs", 1);
  spec.max_candidates_per_slot = j.value("max_candidates_per_slot", 200);
  return spec;
}

SuiteSpec load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailureError("cannot open suite file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return suite_from_json(j);
}

std::vector<std::pair<std::string, Instance>> suite_instances(const SuiteSpec& spec) {
  std::vector<std::pair<std::string, Instance>> out;
  for (int n : spec.object_counts) {
    int accepted = 0;
    std::uint64_t sub = 0;
    while (accepted < spec.instances_per_count) {
      if (sub >= static_cast<std::uint64_t>(spec.max_candidates_per_slot) *
                     static_cast<std::uint64_t>(spec.instances_per_count))
        throw SamplingExhaustedError("suite: could not find enough instances matching the "
                                     "filter for n=" + std::to_string(n));
      const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(n) * 1000003 + sub;
      ++sub;
      Instance inst = sample_instance(spec.world, n, seed);
      if (spec.filter != SuiteFilter::Any) {
        const InstanceClass cls =
            classify_instance(inst, spec.planner, spec.classify_budget, spec.classify_seed);
        if (spec.filter == SuiteFilter::MonotoneOnly && cls != InstanceClass::Monotone) continue;
        if (spec.filter == SuiteFilter::NonMonotoneOnly && cls != InstanceClass::NonMonotone)
          continue;
      }
      char id[64];
      std::snprintf(id, sizeof(id), "n%d_s%" PRIu64, n, seed);
      out.emplace_back(id, std::move(inst));
      ++accepted;
    }
  }
  return out;
}

namespace {

RunRecord run_one(const std::string& id, const Instance& instance, const SolverChoice& choice,
                  const SuiteSpec& spec, std::uint64_t seed) {
  RunRecord rec;
  rec.instance_id = id;
  rec.solver = to_string(choice.solver);
  rec.policy = choice.policy ? to_string(*choice.policy) : "none";
  rec.n = instance.object_count();
  rec.seed = seed;
  if (choice.policy) {
    PertsOptions options;
    options.policy = *choice.policy;
    options.local_solver = choice.solver;
    options.budget = spec.budget;
    options.seed = seed;
    const PertsResult result = perts_solve(instance, spec.planner, options);
    rec.solved = result.solved;
    rec.total_ms = result.stats.total_ms;
    rec.verify_ms = result.stats.verify_ms;
    rec.other_ms = result.stats.other_ms();
    rec.planner_calls = result.stats.planner_calls;
    rec.buffers = result.stats.buffers_used;
  } else {
    SolverOptions options;
    options.budget = spec.budget;
    const SolveOutcome outcome = solve_monotone(choice.solver, instance, spec.planner, options);
    rec.solved = outcome.solved;
    rec.total_ms = outcome.stats.total_ms;
    rec.verify_ms = outcome.stats.verify_ms;
    rec.other_ms = outcome.stats.other_ms();
    rec.planner_calls = outcome.stats.planner_calls;
    rec.buffers = 0;
  }
  return rec;
}

}  // namespace

SuiteResult run_suite(const SuiteSpec& spec) {
  const auto instances = suite_instances(spec);

  struct Task {
    const std::pair<std::string, Instance>* instance;
    const SolverChoice* choice;
  };
  std::vector<Task> tasks;
  for (const auto& inst : instances)
    for (const SolverChoice& choice : spec.solvers) tasks.push_back({&inst, &choice});

  std::vector<RunRecord> records(tasks.size());
  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t)
      records[t] = run_one(tasks[t].instance->first, tasks[t].instance->second,
                           *tasks[t].choice, spec, spec.seed_base);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) return;
        records[t] = run_one(tasks[t].instance->first, tasks[t].instance->second,
                             *tasks[t].choice, spec, spec.seed_base);
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
    if (a.solver != b.solver) return a.solver < b.solver;
    return a.policy < b.policy;
  });

  SuiteResult result;
  result.records = std::move(records);
  result.summary = summarize(result.records);
  return result;
}

const char* kCsvHeader =
    "instance_id,solver,policy,n,solved,total_ms,verify_ms,other_ms,planner_calls,buffers,seed";

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  char buf[256];
  for (const RunRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%d,%d,%.17g,%.17g,%.17g,%" PRIu64 ",%" PRIu64
                                    ",%" PRIu64,
                  r.instance_id.c_str(), r.solver.c_str(), r.policy.c_str(), r.n,
                  r.solved ? 1 : 0, r.total_ms, r.verify_ms, r.other_ms, r.planner_calls,
                  r.buffers, r.seed);
    out << buf << "\n";
  }
  return out.str();
}

std::vector<RunRecord> records_from_csv(const std::string& csv) {
  std::vector<RunRecord> out;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input");
  if (line != kCsvHeader) throw ParseError("csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 11) throw ParseError("csv: bad row: " + line);
    RunRecord r;
    r.instance_id = fields[0];
    r.solver = fields[1];
    r.policy = fields[2];
    r.n = std::stoi(fields[3]);
    r.solved = fields[4] == "1";
    r.total_ms = std::stod(fields[5]);
    r.verify_ms = std::stod(fields[6]);
    r.other_ms = std::stod(fields[7]);
    r.planner_calls = std::stoull(fields[8]);
    r.buffers = std::stoull(fields[9]);
    r.seed = std::stoull(fields[10]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::map<std::tuple<std::string, std::string, int>, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) groups[{r.solver, r.policy, r.n}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, rows] : groups) {
    SummaryRow s;
    s.solver = std::get<0>(key);
    s.policy = std::get<1>(key);
    s.n = std::get<2>(key);
    s.runs = static_cast<int>(rows.size());
    int solved = 0;
    double buffers = 0;
    for (const RunRecord* r : rows) {
      if (r->solved) {
        ++solved;
        buffers += static_cast<double>(r->buffers);
      }
      s.mean_total_ms += r->total_ms;
      s.mean_verify_ms += r->verify_ms;
      s.mean_other_ms += r->other_ms;
      s.mean_planner_calls += static_cast<double>(r->planner_calls);
    }
    s.success_rate = static_cast<double>(solved) / s.runs;
    s.mean_total_ms /= s.runs;
    s.mean_verify_ms /= s.runs;
    s.mean_other_ms /= s.runs;
    s.mean_planner_calls /= s.runs;
    s.mean_buffers = solved > 0 ? buffers / solved : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

std::string csv_without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i == 5 || i == 6 || i == 7) fields[i] = "-";
      out << fields[i] << (i + 1 < fields.size() ? "," : "");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace shelfplan
