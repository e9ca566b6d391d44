#pragma once

#include <cstdint>
#include <vector>

#include "shelfplan/manipulation.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

enum class OccupancyKind : std::uint8_t { AtStart, AtGoal };

/// "Object i is at its start/goal position" for the local task the store was
/// extracted from.
struct OccupancyLiteral {
  int object = -1;
  OccupancyKind kind = OccupancyKind::AtStart;

  bool operator==(const OccupancyLiteral& o) const {
    return object == o.object && kind == o.kind;
  }
  bool operator<(const OccupancyLiteral& o) const {
    if (object != o.object) return object < o.object;
    return static_cast<int>(kind) < static_cast<int>(o.kind);
  }
};

/// Conjunction of occupancy literals: when all hold, don't move the object
/// this clause is stored under. Direct clauses come straight from grasp
/// footprint overlaps; elicited ones are the goal-only reciprocals, whose
/// geometric content lives at `source`'s pick site.
struct BlockClause {
  std::vector<OccupancyLiteral> literals;  // sorted, unique, never empty
  int source = -1;                         // object whose blocked site produced it
  bool elicited = false;

  bool same_literals(const BlockClause& o) const { return literals == o.literals; }
};

struct ConstraintStore {
  std::vector<std::vector<BlockClause>> per_object;
  std::vector<char> unmovable;  // every grasp at some site wall-blocked
  Arrangement starts;           // local task this store refers to
  Arrangement goals;

  std::size_t clause_count() const;
};

struct ConstraintOptions {
  bool subsumption = true;
  std::size_t clause_budget = 100000;  // DnfBlowupError beyond this
};

/// Grasp-footprint reachability constraints for the local task starts->goals.
/// Buffer placements in `starts` are simply that object's start here. Costs
/// O(n*k) grasp checks and zero motion-planner calls.
ConstraintStore obtain_constraints(const WorldSpec& world, const Arrangement& starts,
                                   const Arrangement& goals, ConstraintOptions options = {});

bool clause_satisfied(const BlockClause& clause, const Arrangement& a,
                      const ConstraintStore& store);

/// False iff some stored clause for `object` is satisfied at `a` (i.e. the
/// move must be pruned).
bool forward_checking(int object, const Arrangement& a, const ConstraintStore& store);

/// First satisfied clause, or nullptr when the move is allowed. Never returns
/// a clause for unmovable objects (they are rejected outright).
const BlockClause* forward_checking_explain(int object, const Arrangement& a,
                                            const ConstraintStore& store);

/// AND-of-ORs to DNF expansion used by obtain_constraints, exposed for
/// property tests. Factors are per-grasp blocker alternatives; clauses that
/// demand an object at two places at once are dropped.
std::vector<std::vector<OccupancyLiteral>> expand_dnf(
    const std::vector<std::vector<OccupancyLiteral>>& factors, const Arrangement& starts,
    const Arrangement& goals, std::size_t clause_budget);

}  // namespace shelfplan
