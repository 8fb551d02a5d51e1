#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cayley/bit_word.hpp"
#include "cayley/topology.hpp"

namespace cayley {

enum class Mode : std::uint8_t { Idle, Search, Max, Min };

const char* to_string(Mode mode);

enum class Combine : std::uint8_t { Or, And };

// Phase1Only holds every node once it has compared the whole key, so match
// flags stay readable until the next reset.
enum class SearchScope : std::uint8_t { Full, Phase1Only };

inline Combine combine_for(Mode mode) { return mode == Mode::Min ? Combine::And : Combine::Or; }
inline bool combine_identity(Combine op) { return op == Combine::And; }

/// Bits on a node's ports for one cycle. An empty optional means the
/// neighbor did not drive that wire.
struct Signals {
  std::optional<bool> parent;
  std::vector<std::optional<bool>> children;

  static Signals for_children(std::size_t count) {
    Signals s;
    s.children.resize(count);
    return s;
  }
  void clear() {
    parent.reset();
    for (auto& c : children) c.reset();
  }
  bool any_driven() const;

  friend bool operator==(const Signals&, const Signals&) = default;
};

struct NodeFlags {
  bool state = false;
  bool start = false;
  bool match = true;
  bool link_mem = false;          // l_m: 1 excludes the local word
  std::vector<bool> link_child;   // one per child; the root carries eta+1
  bool link_parent = false;
  bool perm_disabled = false;     // survives resets, pins link_mem to 1

  friend bool operator==(const NodeFlags&, const NodeFlags&) = default;
};

struct NodeState {
  NodeId id = kRoot;
  BitWord word;
  NodeFlags flags;
  // Counts send steps taken since the node was started.
  std::uint64_t local_clock = 0;
  Signals inbox;
};

NodeState make_node(const CayleyTopology& topo, NodeId id, std::uint64_t value);

// Search protocol: key broadcast down the tree, match flags OR-ed back up.
NodeState receive_search(NodeState node, const Signals& incoming, const CayleyTopology& topo,
                         SearchScope scope = SearchScope::Full);
// In-place variants used by the engine; port counts are not re-checked.
void receive_search_into(NodeState& node, const Signals& incoming, const CayleyTopology& topo,
                         SearchScope scope = SearchScope::Full);
std::pair<NodeState, Signals> send_search(NodeState node, const CayleyTopology& topo,
                                          SearchScope scope = SearchScope::Full);
// Same as above, updating `node` and overwriting `out` in place.
void send_search_into(NodeState& node, Signals& out, const CayleyTopology& topo,
                      SearchScope scope = SearchScope::Full);

// Bit-serial max/min tournament from leaves to root.
NodeState receive_max(NodeState node, const Signals& incoming, const CayleyTopology& topo,
                      Combine combine);
void receive_max_into(NodeState& node, const Signals& incoming, const CayleyTopology& topo,
                      Combine combine);
std::pair<NodeState, Signals> send_max(NodeState node, const CayleyTopology& topo,
                                       Combine combine);
void send_max_into(NodeState& node, Signals& out, const CayleyTopology& topo, Combine combine);

NodeState reset_flags(NodeState node, Mode next_mode, const CayleyTopology& topo);

}  // namespace cayley
