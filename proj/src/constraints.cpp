#include "shelfplan/constraints.hpp"

#include <algorithm>
#include <set>

#include "shelfplan/errors.hpp"

namespace shelfplan {

std::size_t ConstraintStore::clause_count() const {
  std::size_t n = 0;
  for (const auto& clauses : per_object) n += clauses.size();
  return n;
}

namespace {

void sort_unique(std::vector<OccupancyLiteral>& lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

// A clause asking for object x at start and at goal simultaneously can never
// fire when those positions differ.
bool clause_unsatisfiable(const std::vector<OccupancyLiteral>& lits, const Arrangement& starts,
                          const Arrangement& goals) {
  for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
    if (lits[i].object == lits[i + 1].object &&
        !same_position(starts[lits[i].object], goals[lits[i].object]))
      return true;
  }
  return false;
}

void dedup_clauses(std::vector<std::vector<OccupancyLiteral>>& clauses) {
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
}

}  // namespace

std::vector<std::vector<OccupancyLiteral>> expand_dnf(
    const std::vector<std::vector<OccupancyLiteral>>& factors, const Arrangement& starts,
    const Arrangement& goals, std::size_t clause_budget) {
  std::vector<std::vector<OccupancyLiteral>> clauses{{}};
  for (const auto& factor : factors) {
    std::vector<std::vector<OccupancyLiteral>> next;
    for (const auto& partial : clauses)
      for (const OccupancyLiteral& lit : factor) {
        auto clause = partial;
        clause.push_back(lit);
        sort_unique(clause);
        if (clause_unsatisfiable(clause, starts, goals)) continue;
        next.push_back(std::move(clause));
        if (next.size() > clause_budget)
          throw DnfBlowupError("constraint expansion exceeded the clause budget");
      }
    dedup_clauses(next);
    clauses = std::move(next);
    if (clauses.empty()) return clauses;  // every combination unsatisfiable
  }
  return clauses;
}

namespace {

struct SiteFactors {
  bool never_blocked = false;  // some grasp is always free
  std::vector<std::vector<OccupancyLiteral>> factors;
};

// Per-grasp blocker alternatives at one grasp site of `object`. Wall-blocked
// grasps contribute an always-true factor, which drops out of the
// conjunction; an empty blocker set means the site can always be reached.
SiteFactors site_blocking_factors(const WorldSpec& world, int object, Point2 site,
                                  const Arrangement& starts, const Arrangement& goals) {
  SiteFactors out;
  const int n = starts.size();
  for (const GraspPose& grasp : generate_grasps(world, site)) {
    if (footprint_hits_walls(grasp, world)) continue;
    std::vector<OccupancyLiteral> factor;
    for (int x = 0; x < n; ++x) {
      if (x == object) continue;
      const Disc start_disc{starts[x], world.object_radius};
      const Disc goal_disc{goals[x], world.object_radius};
      const bool merged = same_position(starts[x], goals[x]);
      const bool hits_start = disc_disc_intersect(grasp.gripper, start_disc) ||
                              capsule_disc_intersect(grasp.wrist, start_disc);
      const bool hits_goal = disc_disc_intersect(grasp.gripper, goal_disc) ||
                             capsule_disc_intersect(grasp.wrist, goal_disc);
      if (hits_start) factor.push_back({x, merged ? OccupancyKind::AtGoal : OccupancyKind::AtStart});
      if (hits_goal && !(hits_start && merged)) factor.push_back({x, OccupancyKind::AtGoal});
    }
    if (factor.empty()) {
      out.never_blocked = true;
      return out;
    }
    sort_unique(factor);
    out.factors.push_back(std::move(factor));
  }
  return out;
}

void add_clause(std::vector<BlockClause>& clauses, std::vector<OccupancyLiteral> lits, int source,
                bool elicited) {
  BlockClause c;
  c.literals = std::move(lits);
  c.source = source;
  c.elicited = elicited;
  for (const BlockClause& existing : clauses)
    if (existing.same_literals(c)) return;
  clauses.push_back(std::move(c));
}

void prune_subsumed(std::vector<BlockClause>& clauses) {
  std::stable_sort(clauses.begin(), clauses.end(), [](const BlockClause& a, const BlockClause& b) {
    if (a.literals.size() != b.literals.size()) return a.literals.size() < b.literals.size();
    return a.literals < b.literals;
  });
  std::vector<BlockClause> kept;
  for (BlockClause& c : clauses) {
    bool subsumed = false;
    for (const BlockClause& k : kept)
      if (std::includes(c.literals.begin(), c.literals.end(), k.literals.begin(),
                        k.literals.end())) {
        subsumed = true;
        break;
      }
    if (!subsumed) kept.push_back(std::move(c));
  }
  clauses = std::move(kept);
}

}  // namespace

ConstraintStore obtain_constraints(const WorldSpec& world, const Arrangement& starts,
                                   const Arrangement& goals, ConstraintOptions options) {
  const int n = starts.size();
  ConstraintStore store;
  store.starts = starts;
  store.goals = goals;
  store.per_object.resize(n);
  store.unmovable.assign(n, 0);

  for (int o = 0; o < n; ++o) {
    if (same_position(starts[o], goals[o])) continue;  // never moved by a local task
    for (const Point2 site : {starts[o], goals[o]}) {
      SiteFactors site_factors = site_blocking_factors(world, o, site, starts, goals);
      if (site_factors.never_blocked) continue;
      if (site_factors.factors.empty()) {
        // Every grasp pokes through a wall: the object can never be handled
        // at this site, regardless of the arrangement.
        store.unmovable[o] = 1;
        continue;
      }
      auto clauses = expand_dnf(site_factors.factors, starts, goals, options.clause_budget);
      for (auto& lits : clauses) add_clause(store.per_object[o], std::move(lits), o, false);
    }
  }

  // Goal-only clauses elicit reciprocal constraints on the constraining
  // objects: for clause {G_a, G_b} of o, object a must not move while b is at
  // its goal and o still at its start (and symmetrically for b).
  std::vector<std::pair<int, BlockClause>> elicited;
  for (int o = 0; o < n; ++o) {
    for (const BlockClause& clause : store.per_object[o]) {
      if (clause.elicited) continue;
      const bool all_goal =
          std::all_of(clause.literals.begin(), clause.literals.end(),
                      [](const OccupancyLiteral& l) { return l.kind == OccupancyKind::AtGoal; });
      if (!all_goal) continue;
      for (const OccupancyLiteral& lit : clause.literals) {
        std::vector<OccupancyLiteral> lits;
        for (const OccupancyLiteral& other : clause.literals)
          if (!(other == lit)) lits.push_back(other);
        lits.push_back({o, OccupancyKind::AtStart});
        sort_unique(lits);
        BlockClause c;
        c.literals = std::move(lits);
        c.source = o;
        c.elicited = true;
        elicited.emplace_back(lit.object, std::move(c));
      }
    }
  }
  for (auto& [target, clause] : elicited)
    add_clause(store.per_object[target], std::move(clause.literals), clause.source, true);

  if (options.subsumption)
    for (auto& clauses : store.per_object) prune_subsumed(clauses);

  return store;
}

bool clause_satisfied(const BlockClause& clause, const Arrangement& a,
                      const ConstraintStore& store) {
  for (const OccupancyLiteral& lit : clause.literals) {
    const Point2 ref = lit.kind == OccupancyKind::AtStart ? store.starts[lit.object]
                                                          : store.goals[lit.object];
    if (!same_position(a[lit.object], ref)) return false;
  }
  return true;
}

const BlockClause* forward_checking_explain(int object, const Arrangement& a,
                                            const ConstraintStore& store) {
  for (const BlockClause& clause : store.per_object[object])
    if (clause_satisfied(clause, a, store)) return &clause;
  return nullptr;
}

bool forward_checking(int object, const Arrangement& a, const ConstraintStore& store) {
  if (store.unmovable[object]) return false;
  return forward_checking_explain(object, a, store) == nullptr;
}

}  // namespace shelfplan
