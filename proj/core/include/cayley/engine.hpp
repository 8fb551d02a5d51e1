#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cayley/node.hpp"
#include "cayley/topology.hpp"

namespace cayley {

/// Raised when a run does not reach quiescence within its cycle budget.
/// Always a protocol bug, never a normal outcome.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceEvent {
  std::uint64_t cycle = 0;
  NodeId node = kRoot;
  int depth = 0;
  Role role = Role::Root;
  std::uint64_t word = 0;
  NodeFlags flags;
  Signals emitted;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct Tracer {
  TraceSink sink;
  std::function<bool(NodeId)> filter;  // empty: every node
  std::uint64_t cycle_offset = 0;      // added to global_cycle in emitted events
  // Called when a run segment starts from freshly reset flags, before its
  // initial snapshot.
  std::function<void(Mode)> on_segment;
};

class Configuration {
 public:
  Configuration(std::shared_ptr<const CayleyTopology> topo, const std::vector<std::uint64_t>& words);

  const CayleyTopology& topology() const { return *topo_; }
  std::shared_ptr<const CayleyTopology> topology_ptr() const { return topo_; }

  Mode mode() const { return mode_; }
  std::uint64_t global_cycle() const { return global_cycle_; }

  std::vector<NodeState>& nodes() { return nodes_; }
  const std::vector<NodeState>& nodes() const { return nodes_; }
  NodeState& node(NodeId id) { return nodes_.at(id); }
  const NodeState& node(NodeId id) const { return nodes_.at(id); }

  /// Bits each node put on the wire during the most recent step.
  const std::vector<Signals>& last_emitted() const { return emitted_; }

  /// Resets every node's flags for `mode` and zeroes the cycle counter.
  void reset(Mode mode);

  /// Applies to search mode only; reset() restores Full.
  void set_search_scope(SearchScope scope) { scope_ = scope; }
  SearchScope search_scope() const { return scope_; }

  /// Order in which nodes are evaluated within a step. Results do not
  /// depend on it; exposed so tests can prove that.
  void set_evaluation_order(std::vector<NodeId> order);

 private:
  friend void step(Configuration& cfg);

  std::shared_ptr<const CayleyTopology> topo_;
  std::vector<NodeState> nodes_;
  std::vector<Signals> emitted_;
  std::vector<Signals> inbox_;
  std::vector<NodeId> order_;
  std::uint64_t global_cycle_ = 0;
  Mode mode_ = Mode::Idle;
  SearchScope scope_ = SearchScope::Full;
};

/// One global cycle: every node sends, the bits are delivered, every node
/// receives. Throws std::logic_error in Idle mode.
void step(Configuration& cfg);

enum class Stop : std::uint8_t {
  Quiescent,     // the active mode's full termination condition
  SearchPhase1,  // search only: every non-root node has compared all key bits
};

bool is_quiescent(const Configuration& cfg, Stop stop = Stop::Quiescent);

/// Budget used when callers do not supply one: 4 (w + 2h + 2).
std::uint64_t default_cycle_budget(const TreeParams& params);

using StepObserver = std::function<void(const Configuration&)>;

/// Steps until the termination predicate holds; returns the cycles used by
/// this call. Throws BudgetExceeded when `max_cycles` runs out first.
/// `observer`, when set, sees the configuration after every step.
std::uint64_t run_until_quiescent(Configuration& cfg, std::uint64_t max_cycles,
                                  Stop stop = Stop::Quiescent, const Tracer* tracer = nullptr,
                                  const StepObserver& observer = {});

std::vector<TraceEvent> snapshot(const Configuration& cfg);
void emit_snapshot(const Configuration& cfg, const Tracer& tracer);
/// on_segment followed by the initial snapshot.
void begin_segment(const Configuration& cfg, const Tracer& tracer);

}  // namespace cayley
