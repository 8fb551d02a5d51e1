#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cayley {

using NodeId = std::uint32_t;
inline constexpr NodeId kRoot = 0;

struct TreeParams {
  int eta = 2;        // branching order of non-root internal nodes
  int height = 2;     // levels, root included
  int word_size = 8;  // bits per memory word
};

enum class Role : std::uint8_t { Root, Intermediate, Leaf };

const char* to_string(Role role);

/// Number of nodes in a finite Cayley tree of the given order and height.
/// Throws std::overflow_error rather than wrapping.
std::uint64_t node_count(int eta, int height);

/// Smallest height >= 2 whose non-root slots can hold `list_len` elements.
int required_height(int eta, std::uint64_t list_len);

void validate(const TreeParams& params);

// Immutable after construction. Node ids are breadth-first, root = 0,
// children ordered left to right.
class CayleyTopology {
 public:
  explicit CayleyTopology(const TreeParams& params);

  const TreeParams& params() const { return params_; }
  int eta() const { return params_.eta; }
  int height() const { return params_.height; }
  int word_size() const { return params_.word_size; }
  std::size_t size() const { return parent_.size(); }

  bool is_root(NodeId id) const { return id == kRoot; }
  NodeId parent(NodeId id) const;
  std::span<const NodeId> children(NodeId id) const;
  Role role(NodeId id) const { return role_.at(id); }
  int depth(NodeId id) const { return depth_.at(id); }

  /// Index of `child` within its parent's children list.
  int child_port(NodeId child) const { return child_index_.at(child); }

  std::size_t leaf_count() const;
  /// `root` followed by every node in its subtree, breadth-first.
  std::vector<NodeId> subtree(NodeId root) const;

 private:
  TreeParams params_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> first_child_;
  std::vector<std::uint32_t> child_count_;
  std::vector<NodeId> child_list_;
  std::vector<Role> role_;
  std::vector<int> depth_;
  std::vector<int> child_index_;
};

CayleyTopology build_topology(const TreeParams& params);

}  // namespace cayley
