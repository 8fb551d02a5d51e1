#include "cayley/topology.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace cayley {
namespace {

// Node ids are 32-bit; anything larger is treated as overflow.
constexpr std::uint64_t kMaxNodes = std::numeric_limits<NodeId>::max();

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > kMaxNodes / b) throw std::overflow_error("Cayley tree node count overflow");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > kMaxNodes - b) throw std::overflow_error("Cayley tree node count overflow");
  return a + b;
}

}  // namespace

const char* to_string(Role role) {
  switch (role) {
    case Role::Root: return "root";
    case Role::Intermediate: return "intermediate";
    case Role::Leaf: return "leaf";
  }
  return "?";
}

std::uint64_t node_count(int eta, int height) {
  if (eta < 1) throw std::invalid_argument("eta must be >= 1, got " + std::to_string(eta));
  if (height < 1) throw std::invalid_argument("height must be >= 1, got " + std::to_string(height));
  if (height == 1) return 1;
  // 1 + (eta+1) * sum_{i=0}^{h-2} eta^i, accumulated level by level
  std::uint64_t total = 1;
  std::uint64_t level = static_cast<std::uint64_t>(eta) + 1;
  for (int depth = 1; depth < height; ++depth) {
    total = checked_add(total, level);
    if (depth + 1 < height) level = checked_mul(level, static_cast<std::uint64_t>(eta));
  }
  return total;
}

int required_height(int eta, std::uint64_t list_len) {
  int height = 2;
  while (node_count(eta, height) - 1 < list_len) ++height;
  return height;
}

void validate(const TreeParams& params) {
  if (params.word_size < 1 || params.word_size > 63) {
    throw std::invalid_argument("word size must be in [1, 63], got " +
                                std::to_string(params.word_size));
  }
  node_count(params.eta, params.height);
}

CayleyTopology::CayleyTopology(const TreeParams& params) : params_(params) {
  validate(params);
  const auto n = static_cast<std::size_t>(node_count(params.eta, params.height));
  parent_.assign(n, kRoot);
  first_child_.assign(n, 0);
  child_count_.assign(n, 0);
  role_.assign(n, Role::Leaf);
  depth_.assign(n, 0);
  child_index_.assign(n, 0);
  child_list_.reserve(n > 0 ? n - 1 : 0);

  // Breadth-first: ids are handed out in the order nodes are discovered.
  NodeId next = 1;
  for (NodeId id = 0; id < n; ++id) {
    const int d = depth_[id];
    const bool leaf = d == params.height - 1;
    role_[id] = id == kRoot ? Role::Root : (leaf ? Role::Leaf : Role::Intermediate);
    if (leaf) continue;
    const int fanout = id == kRoot ? params.eta + 1 : params.eta;
    first_child_[id] = static_cast<std::uint32_t>(child_list_.size());
    child_count_[id] = static_cast<std::uint32_t>(fanout);
    for (int c = 0; c < fanout; ++c) {
      const NodeId child = next++;
      parent_[child] = id;
      depth_[child] = d + 1;
      child_index_[child] = c;
      child_list_.push_back(child);
    }
  }
  // h == 1: the root is the only node and also has no children.
  if (n == 1) role_[kRoot] = Role::Root;
}

NodeId CayleyTopology::parent(NodeId id) const {
  if (id == kRoot) throw std::out_of_range("root has no parent");
  return parent_.at(id);
}

std::span<const NodeId> CayleyTopology::children(NodeId id) const {
  const auto count = child_count_.at(id);
  if (count == 0) return {};
  return std::span<const NodeId>(child_list_).subspan(first_child_[id], count);
}

std::size_t CayleyTopology::leaf_count() const {
  std::size_t leaves = 0;
  for (const Role r : role_) leaves += r == Role::Leaf;
  return leaves;
}

std::vector<NodeId> CayleyTopology::subtree(NodeId root) const {
  std::vector<NodeId> out{root};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const NodeId c : children(out[i])) out.push_back(c);
  }
  return out;
}

CayleyTopology build_topology(const TreeParams& params) { return CayleyTopology(params); }

}  // namespace cayley
