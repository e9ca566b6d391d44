#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "shelfplan/manipulation.hpp"
#include "shelfplan/world.hpp"

namespace shelfplan {

/// Connected-but-unchecked vs. motion-verified. An Unverified edge respects
/// the reachability constraints; a Verified one additionally carries a
/// planned pick-and-place path.
enum class EdgeStatus : std::uint8_t { Unverified, Verified };

enum class EdgeKind : std::uint8_t { GoalMove, BufferMove };

enum class SearchMode : std::uint8_t { Backtracking, Backjumping };

struct EdgePaths {
  MotionPath transit;
  MotionPath transfer;
};

struct TreeNode {
  Arrangement arrangement;
  int parent = -1;
  int moved_object = -1;  // edge label from parent; -1 at the root
  EdgeStatus edge_status = EdgeStatus::Unverified;
  EdgeKind edge_kind = EdgeKind::GoalMove;
  std::optional<EdgePaths> edge_paths;
  std::vector<int> children;
  bool alive = true;
};

/// Arrangement-indexed tree with subtree deletion. Node ids are stable;
/// deleted slots stay tombstoned. With dedup enabled (everything except the
/// mRS baseline) at most one live node holds a given arrangement, and
/// deleting a subtree releases its arrangements for rediscovery through a
/// different parent.
class SearchTree {
 public:
  explicit SearchTree(bool dedup = true) : dedup_(dedup) {}

  int init_root(const Arrangement& root);
  int add_node(const Arrangement& arrangement, int parent, int moved_object,
               EdgeKind kind = EdgeKind::GoalMove);
  void mark_verified(int node, EdgePaths paths);

  /// Tombstones the whole subtree and unindexes its arrangements.
  /// Returns the number of removed nodes.
  int delete_subtree(int node);

  bool contains(const Arrangement& a) const;
  int find(const Arrangement& a) const;  // -1 when absent
  const TreeNode& node(int id) const { return nodes_[id]; }
  TreeNode& node(int id) { return nodes_[id]; }
  int root() const { return root_; }
  int live_count() const { return live_count_; }
  std::size_t slot_count() const { return nodes_.size(); }

  /// Node ids from the root to `node` inclusive.
  std::vector<int> path_from_root(int node) const;

  /// Deepest ancestor of `node` (possibly itself) whose root path is fully
  /// Verified. The root always qualifies.
  int nearest_verified_ancestor(int node) const;

  std::vector<int> live_ids() const;

  /// Structural self-check used by the tests: index matches live nodes,
  /// parent/child links consistent, Verified edges carry paths.
  void validate() const;

  SearchMode mode = SearchMode::Backtracking;
  int backjump_target = -1;

 private:
  bool dedup_;
  int root_ = -1;
  int live_count_ = 0;
  std::vector<TreeNode> nodes_;
  std::unordered_map<Arrangement, int, ArrangementHash> index_;
};

struct VerifyBranchResult {
  bool success = false;
  int last_accessible = -1;  // alpha_last: parent of the failing edge
  int trimmed = 0;
};

/// Walks the root branch of `node`, skipping the already-verified prefix,
/// verifying each further edge through `verifier`. On the first failure the
/// subtree under the failing child is deleted and its parent reported as the
/// last accessible node.
VerifyBranchResult verify_branch(SearchTree& tree, int node, EdgeVerifier& verifier);

}  // namespace shelfplan
