#include "cayley/engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cayley {

Configuration::Configuration(std::shared_ptr<const CayleyTopology> topo,
                             const std::vector<std::uint64_t>& words)
    : topo_(std::move(topo)) {
  if (!topo_) throw std::invalid_argument("configuration needs a topology");
  const auto n = topo_->size();
  if (words.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " words, got " +
                                std::to_string(words.size()));
  }
  nodes_.reserve(n);
  emitted_.reserve(n);
  for (NodeId id = 0; id < n; ++id) {
    nodes_.push_back(make_node(*topo_, id, words[id]));
    emitted_.push_back(Signals::for_children(topo_->children(id).size()));
  }
  inbox_ = emitted_;
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), NodeId{0});
}

void Configuration::reset(Mode mode) {
  mode_ = mode;
  scope_ = SearchScope::Full;
  global_cycle_ = 0;
  for (auto& node : nodes_) node = reset_flags(std::move(node), mode, *topo_);
  for (auto& e : emitted_) e.clear();
}

void Configuration::set_evaluation_order(std::vector<NodeId> order) {
  std::vector<NodeId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (NodeId i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i || sorted.size() != nodes_.size()) {
      throw std::invalid_argument("evaluation order must be a permutation of node ids");
    }
  }
  order_ = std::move(order);
}

void step(Configuration& cfg) {
  if (cfg.mode_ == Mode::Idle) throw std::logic_error("step() called on an idle configuration");
  const auto& topo = *cfg.topo_;
  const Combine combine = combine_for(cfg.mode_);
  const bool search = cfg.mode_ == Mode::Search;

  for (const NodeId id : cfg.order_) {
    if (search) {
      send_search_into(cfg.nodes_[id], cfg.emitted_[id], topo, cfg.scope_);
    } else {
      send_max_into(cfg.nodes_[id], cfg.emitted_[id], topo, combine);
    }
  }

  auto& inbox = cfg.inbox_;
  for (auto& s : inbox) s.clear();
  for (const NodeId id : cfg.order_) {
    const auto& out = cfg.emitted_[id];
    if (out.parent) inbox[topo.parent(id)].children[topo.child_port(id)] = out.parent;
    const auto kids = topo.children(id);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (out.children[i]) inbox[kids[i]].parent = out.children[i];
    }
  }

  for (const NodeId id : cfg.order_) {
    if (search) {
      receive_search_into(cfg.nodes_[id], inbox[id], topo, cfg.scope_);
    } else {
      receive_max_into(cfg.nodes_[id], inbox[id], topo, combine);
    }
  }
  ++cfg.global_cycle_;
}

bool is_quiescent(const Configuration& cfg, Stop stop) {
  const auto& topo = cfg.topology();
  const auto w = static_cast<std::uint64_t>(topo.word_size());
  const auto h = static_cast<std::uint64_t>(topo.height());

  switch (cfg.mode()) {
    case Mode::Idle:
      return true;
    case Mode::Search:
      for (const auto& node : cfg.nodes()) {
        if (stop == Stop::SearchPhase1) {
          if (!topo.is_root(node.id) && node.local_clock < w) return false;
          continue;
        }
        // A node at depth d has relayed everything its subtree can produce
        // once it has spent 2(h - d) cycles past the key.
        const auto depth = static_cast<std::uint64_t>(topo.depth(node.id));
        if (node.local_clock < w + 2 * (h - depth)) return false;
      }
      return true;
    case Mode::Max:
    case Mode::Min:
      for (const auto& node : cfg.nodes()) {
        const Role role = topo.role(node.id);
        if (role == Role::Root && (!node.flags.start || node.local_clock < w)) return false;
        if (role == Role::Leaf && node.local_clock <= w) return false;
      }
      return true;
  }
  return false;
}

std::uint64_t default_cycle_budget(const TreeParams& params) {
  return 4 * (static_cast<std::uint64_t>(params.word_size) + 2 * params.height + 2);
}

std::uint64_t run_until_quiescent(Configuration& cfg, std::uint64_t max_cycles, Stop stop,
                                  const Tracer* tracer, const StepObserver& observer) {
  if (cfg.mode() == Mode::Idle) throw std::logic_error("cannot run an idle configuration");
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be >= 1");
  if (stop == Stop::SearchPhase1 && cfg.mode() != Mode::Search) {
    throw std::logic_error("phase-1 stop only applies to search");
  }
  std::uint64_t used = 0;
  while (!is_quiescent(cfg, stop)) {
    if (used == max_cycles) {
      throw BudgetExceeded(std::string(to_string(cfg.mode())) + " run not quiescent after " +
                           std::to_string(max_cycles) + " cycles");
    }
    step(cfg);
    ++used;
    if (tracer) emit_snapshot(cfg, *tracer);
    if (observer) observer(cfg);
  }
  return used;
}

namespace {

void fill_event(TraceEvent& ev, const Configuration& cfg, const NodeState& node) {
  const auto& topo = cfg.topology();
  ev.cycle = cfg.global_cycle();
  ev.node = node.id;
  ev.depth = topo.depth(node.id);
  ev.role = topo.role(node.id);
  ev.word = node.word.value();
  ev.flags = node.flags;
  ev.emitted = cfg.last_emitted()[node.id];
}

}  // namespace

std::vector<TraceEvent> snapshot(const Configuration& cfg) {
  std::vector<TraceEvent> events(cfg.nodes().size());
  for (const auto& node : cfg.nodes()) fill_event(events[node.id], cfg, node);
  return events;
}

void emit_snapshot(const Configuration& cfg, const Tracer& tracer) {
  if (!tracer.sink) return;
  TraceEvent ev;
  for (const auto& node : cfg.nodes()) {
    if (tracer.filter && !tracer.filter(node.id)) continue;
    fill_event(ev, cfg, node);
    ev.cycle += tracer.cycle_offset;
    tracer.sink(ev);
  }
}

void begin_segment(const Configuration& cfg, const Tracer& tracer) {
  if (tracer.on_segment) tracer.on_segment(cfg.mode());
  emit_snapshot(cfg, tracer);
}

}  // namespace cayley
