#pragma once

#include <vector>

#include "shelfplan/tree.hpp"

namespace shelfplan {

struct PlanAction {
  int object = -1;
  Point2 from;
  Point2 to;
  EdgeKind kind = EdgeKind::GoalMove;
  MotionPath transit;
  MotionPath transfer;
};

/// Ordered pick-and-place actions from the initial to the final arrangement.
struct Plan {
  std::vector<PlanAction> actions;
  int buffers_used = 0;
};

}  // namespace shelfplan
