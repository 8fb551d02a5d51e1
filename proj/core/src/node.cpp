#include "cayley/node.hpp"

#include <stdexcept>
#include <string>

namespace cayley {
namespace {

void check_ports(const NodeState& node, const Signals& incoming, const CayleyTopology& topo) {
  const auto expected = topo.children(node.id).size();
  if (incoming.children.size() != expected) {
    throw std::invalid_argument("node " + std::to_string(node.id) + " expects " +
                                std::to_string(expected) + " child ports, got " +
                                std::to_string(incoming.children.size()));
  }
  if (topo.is_root(node.id) && incoming.parent.has_value()) {
    throw std::invalid_argument("root received a bit on a parent port");
  }
}

void reset_outputs(Signals& out, const NodeState& node, const CayleyTopology& topo) {
  out.parent.reset();
  out.children.assign(topo.children(node.id).size(), std::nullopt);
}

void drive_children(Signals& out, bool bit) {
  for (auto& c : out.children) c = bit;
}

std::uint64_t word_length(const NodeState& node) {
  return static_cast<std::uint64_t>(node.word.width());
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Idle: return "idle";
    case Mode::Search: return "search";
    case Mode::Max: return "max";
    case Mode::Min: return "min";
  }
  return "?";
}

bool Signals::any_driven() const {
  if (parent) return true;
  for (const auto& c : children) {
    if (c) return true;
  }
  return false;
}

NodeState make_node(const CayleyTopology& topo, NodeId id, std::uint64_t value) {
  NodeState node;
  node.id = id;
  node.word = BitWord(topo.word_size(), value);
  node.flags.link_child.assign(topo.children(id).size(), false);
  node.inbox = Signals::for_children(topo.children(id).size());
  return node;
}

void receive_search_into(NodeState& node, const Signals& incoming, const CayleyTopology& topo,
                         SearchScope scope) {
  node.inbox = incoming;
  const auto len = word_length(node);
  auto& f = node.flags;

  bool children_or = false;
  for (const auto& c : incoming.children) children_or = children_or || c.value_or(false);

  if (topo.is_root(node.id)) {
    // Root only listens once the whole key has gone out; 1 is absorbing.
    if (node.local_clock > len && !f.state && scope == SearchScope::Full) f.state = children_or;
    return;
  }

  if (node.local_clock <= len) {
    if (!f.start) {
      // Waiting for the initiate signal.
      f.state = incoming.parent.value_or(false);
      f.start = f.state;
      return;
    }
    if (node.local_clock == 0) return;
    f.state = incoming.parent.value_or(false);
    if (f.match) {
      f.match = f.state == node.word.bit(static_cast<int>(node.local_clock - 1));
    }
    return;
  }

  if (scope == SearchScope::Phase1Only) return;

  // Phase 2: forward this node's match once, then relay whatever rises from below.
  f.state = children_or || f.match;
  f.match = false;
}

NodeState receive_search(NodeState node, const Signals& incoming, const CayleyTopology& topo,
                         SearchScope scope) {
  check_ports(node, incoming, topo);
  receive_search_into(node, incoming, topo, scope);
  return node;
}

void send_search_into(NodeState& node, Signals& out, const CayleyTopology& topo,
                      SearchScope scope) {
  reset_outputs(out, node, topo);
  const auto len = word_length(node);
  auto& f = node.flags;

  if (topo.is_root(node.id)) {
    if (node.local_clock == 0) {
      f.state = true;
      drive_children(out, f.state);
    } else if (node.local_clock <= len) {
      f.state = node.word.bit(static_cast<int>(node.local_clock - 1));
      drive_children(out, f.state);
      // The last key bit is on the wire; the register now accumulates matches.
      if (node.local_clock == len) f.state = false;
    }
    ++node.local_clock;
    return;
  }

  if (!f.start) return;
  if (node.local_clock <= len) {
    drive_children(out, f.state);
  } else if (scope == SearchScope::Full) {
    out.parent = f.state;
  }
  ++node.local_clock;
}

std::pair<NodeState, Signals> send_search(NodeState node, const CayleyTopology& topo,
                                          SearchScope scope) {
  Signals out;
  send_search_into(node, out, topo, scope);
  return {std::move(node), std::move(out)};
}

void receive_max_into(NodeState& node, const Signals& incoming, const CayleyTopology& topo,
                      Combine combine) {
  node.inbox = incoming;
  auto& f = node.flags;
  const bool root = topo.is_root(node.id);

  if (topo.role(node.id) == Role::Leaf) return;

  if (!f.start) {
    for (const auto& c : incoming.children) {
      if (c.value_or(false)) {
        f.start = true;
        f.state = true;
        break;
      }
    }
    return;
  }

  const auto len = word_length(node);
  if (node.local_clock < 1 || node.local_clock > len) return;

  const bool identity = combine_identity(combine);
  bool s = identity;
  bool any = false;
  auto fold = [&](bool bit) {
    s = combine == Combine::Or ? (s || bit) : (s && bit);
    any = true;
  };
  for (std::size_t i = 0; i < incoming.children.size(); ++i) {
    if (!f.link_child[i]) fold(incoming.children[i].value_or(identity));
  }
  const bool own = node.word.msb();
  if (!root && !f.link_mem) fold(own);
  if (!any) s = identity;

  for (std::size_t i = 0; i < incoming.children.size(); ++i) {
    if (!f.link_child[i] && incoming.children[i].value_or(identity) != s) f.link_child[i] = true;
  }
  if (!root && !f.link_mem && own != s) f.link_mem = true;

  f.state = s;
  if (root) node.word.set_msb(s);
  node.word.rotate_left();
}

NodeState receive_max(NodeState node, const Signals& incoming, const CayleyTopology& topo,
                      Combine combine) {
  check_ports(node, incoming, topo);
  receive_max_into(node, incoming, topo, combine);
  return node;
}

void send_max_into(NodeState& node, Signals& out, const CayleyTopology& topo, Combine combine) {
  reset_outputs(out, node, topo);
  auto& f = node.flags;
  const auto len = word_length(node);

  if (!f.start) return;

  switch (topo.role(node.id)) {
    case Role::Leaf:
      if (node.local_clock == 0) {
        f.state = true;
        out.parent = f.state;
      } else if (node.local_clock <= len) {
        f.state = f.link_mem ? combine_identity(combine) : node.word.msb();
        out.parent = f.state;
        node.word.rotate_left();
      }
      break;
    case Role::Intermediate:
      if (node.local_clock <= len) out.parent = f.state;
      break;
    case Role::Root:
      break;
  }
  ++node.local_clock;
}

std::pair<NodeState, Signals> send_max(NodeState node, const CayleyTopology& topo,
                                       Combine combine) {
  Signals out;
  send_max_into(node, out, topo, combine);
  return {std::move(node), std::move(out)};
}

NodeState reset_flags(NodeState node, Mode next_mode, const CayleyTopology& topo) {
  auto& f = node.flags;
  node.local_clock = 0;
  node.inbox.clear();
  f.link_child.assign(topo.children(node.id).size(), false);
  f.link_parent = false;
  f.link_mem = f.perm_disabled;

  const Role role = topo.role(node.id);
  switch (next_mode) {
    case Mode::Search:
      if (role == Role::Root) {
        f.state = f.start = f.match = true;
      } else {
        f.state = f.start = false;
        f.match = !f.perm_disabled;
      }
      break;
    case Mode::Max:
    case Mode::Min:
      f.state = f.start = role == Role::Leaf;
      f.match = true;
      break;
    case Mode::Idle:
      f.state = f.start = false;
      f.match = true;
      break;
  }
  return node;
}

}  // namespace cayley
