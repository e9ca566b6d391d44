#include "shelfplan/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace shelfplan {

int SearchTree::init_root(const Arrangement& root) {
  if (root_ != -1) throw std::logic_error("tree already has a root");
  TreeNode n;
  n.arrangement = root;
  nodes_.push_back(std::move(n));
  root_ = 0;
  live_count_ = 1;
  if (dedup_) index_.emplace(nodes_[0].arrangement, 0);
  return root_;
}

int SearchTree::add_node(const Arrangement& arrangement, int parent, int moved_object,
                         EdgeKind kind) {
  if (parent < 0 || parent >= static_cast<int>(nodes_.size()) || !nodes_[parent].alive)
    throw std::logic_error("add_node: bad parent");
  if (dedup_ && index_.count(arrangement))
    throw std::logic_error("add_node: arrangement already in tree");
  TreeNode n;
  n.arrangement = arrangement;
  n.parent = parent;
  n.moved_object = moved_object;
  n.edge_kind = kind;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  nodes_[parent].children.push_back(id);
  ++live_count_;
  if (dedup_) index_.emplace(nodes_[id].arrangement, id);
  return id;
}

void SearchTree::mark_verified(int node, EdgePaths paths) {
  TreeNode& n = nodes_[node];
  n.edge_status = EdgeStatus::Verified;
  n.edge_paths = std::move(paths);
}

int SearchTree::delete_subtree(int node) {
  if (node == root_) throw std::logic_error("cannot delete the root");
  TreeNode& doomed = nodes_[node];
  if (!doomed.alive) return 0;
  auto& siblings = nodes_[doomed.parent].children;
  siblings.erase(std::remove(siblings.begin(), siblings.end(), node), siblings.end());

  int removed = 0;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    TreeNode& n = nodes_[id];
    if (!n.alive) continue;
    n.alive = false;
    ++removed;
    --live_count_;
    if (dedup_) {
      auto it = index_.find(n.arrangement);
      if (it != index_.end() && it->second == id) index_.erase(it);
    }
    for (int c : n.children) stack.push_back(c);
    n.children.clear();
  }
  return removed;
}

bool SearchTree::contains(const Arrangement& a) const { return find(a) != -1; }

int SearchTree::find(const Arrangement& a) const {
  if (dedup_) {
    auto it = index_.find(a);
    return it == index_.end() ? -1 : it->second;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].alive && nodes_[i].arrangement == a) return static_cast<int>(i);
  return -1;
}

std::vector<int> SearchTree::path_from_root(int node) const {
  std::vector<int> path;
  for (int v = node; v != -1; v = nodes_[v].parent) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

int SearchTree::nearest_verified_ancestor(int node) const {
  const auto path = path_from_root(node);
  int last = root_;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (nodes_[path[i]].edge_status != EdgeStatus::Verified) break;
    last = path[i];
  }
  return last;
}

std::vector<int> SearchTree::live_ids() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].alive) out.push_back(static_cast<int>(i));
  return out;
}

void SearchTree::validate() const {
  int live = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& n = nodes_[i];
    if (!n.alive) continue;
    ++live;
    if (static_cast<int>(i) == root_) {
      if (n.parent != -1 || n.moved_object != -1)
        throw std::logic_error("validate: root has a parent or an edge label");
    } else {
      if (n.parent < 0 || !nodes_[n.parent].alive)
        throw std::logic_error("validate: dangling parent ref");
      const auto& sib = nodes_[n.parent].children;
      if (std::count(sib.begin(), sib.end(), static_cast<int>(i)) != 1)
        throw std::logic_error("validate: node missing from parent's children");
      if (n.edge_status == EdgeStatus::Verified && !n.edge_paths)
        throw std::logic_error("validate: verified edge without paths");
    }
    for (int c : n.children)
      if (!nodes_[c].alive || nodes_[c].parent != static_cast<int>(i))
        throw std::logic_error("validate: broken child link");
  }
  if (live != live_count_) throw std::logic_error("validate: live count drifted");
  if (dedup_) {
    if (static_cast<int>(index_.size()) != live)
      throw std::logic_error("validate: index size != live nodes");
    for (const auto& [arr, id] : index_) {
      if (!nodes_[id].alive || !(nodes_[id].arrangement == arr))
        throw std::logic_error("validate: stale index entry");
    }
  }
}

VerifyBranchResult verify_branch(SearchTree& tree, int node, EdgeVerifier& verifier) {
  VerifyBranchResult result;
  const auto path = tree.path_from_root(node);
  int current = tree.nearest_verified_ancestor(node);
  // Locate `current` on the branch, then verify forward from there.
  std::size_t pos = 0;
  while (path[pos] != current) ++pos;
  for (std::size_t i = pos + 1; i < path.size(); ++i) {
    const int child = path[i];
    const auto& outcome =
        verifier.verify(tree.node(current).arrangement, tree.node(child).arrangement);
    if (outcome.has_value()) {
      tree.mark_verified(child, {outcome->transit, outcome->transfer});
      current = child;
    } else {
      result.trimmed = tree.delete_subtree(child);
      result.success = false;
      result.last_accessible = current;
      return result;
    }
  }
  result.success = true;
  result.last_accessible = current;
  return result;
}

}  // namespace shelfplan
