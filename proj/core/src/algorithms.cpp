#include "cayley/algorithms.hpp"

#include <stdexcept>
#include <string>

namespace cayley {
namespace {

void check_runnable(const CayleyTopology& topo) {
  if (topo.height() < 2) throw std::invalid_argument("height 1 tree has no data slots");
}

void check_range(std::uint64_t value, int width) {
  if (value > BitWord::max_value(width)) {
    throw std::out_of_range("element " + std::to_string(value) + " does not fit in " +
                            std::to_string(width) + " bits");
  }
}

std::uint64_t run(Configuration& cfg, Stop stop, const Tracer* tracer) {
  if (tracer) begin_segment(cfg, *tracer);
  return run_until_quiescent(cfg, default_cycle_budget(cfg.topology().params()), stop, tracer);
}

Tracer shifted(const Tracer& t, std::uint64_t offset) {
  Tracer out = t;
  out.cycle_offset = t.cycle_offset + offset;
  return out;
}

ExtremumResult run_extremum(LoadedTree& tree, Mode mode, PaddingPolicy expected,
                            const Tracer* tracer) {
  if (tree.padding != expected) {
    throw std::logic_error(std::string("tree not loaded for ") + to_string(mode));
  }
  auto& cfg = tree.cfg;
  const int w = cfg.topology().word_size();
  cfg.node(kRoot).word = BitWord(w, mode == Mode::Max ? 0 : BitWord::max_value(w));
  cfg.reset(mode);
  ExtremumResult r;
  r.cycles = run(cfg, Stop::Quiescent, tracer);
  r.value = cfg.node(kRoot).word.value();
  return r;
}

}  // namespace

LoadedTree load_list(std::shared_ptr<const CayleyTopology> topo,
                     std::span<const std::uint64_t> elements, Mode mode, std::uint64_t key) {
  check_runnable(*topo);
  const int w = topo->word_size();
  const auto slots = topo->size() - 1;
  if (elements.size() > slots) {
    throw std::invalid_argument("list of " + std::to_string(elements.size()) +
                                " elements exceeds the " + std::to_string(slots) +
                                " non-root slots");
  }
  for (const auto e : elements) check_range(e, w);

  PaddingPolicy padding{};
  std::uint64_t root_word = 0;
  std::uint64_t pad_word = 0;
  switch (mode) {
    case Mode::Search:
      check_range(key, w);
      padding = PaddingPolicy::SearchNeutral;
      root_word = key;
      break;
    case Mode::Max:
      padding = PaddingPolicy::MaxIdentity;
      break;
    case Mode::Min:
      padding = PaddingPolicy::MinIdentity;
      root_word = pad_word = BitWord::max_value(w);
      break;
    case Mode::Idle:
      throw std::invalid_argument("cannot load a list for idle mode");
  }

  std::vector<std::uint64_t> words(topo->size(), pad_word);
  words[kRoot] = root_word;
  std::vector<NodeId> occupied;
  occupied.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto id = static_cast<NodeId>(i + 1);
    words[id] = elements[i];
    occupied.push_back(id);
  }

  LoadedTree tree{Configuration(topo, words), std::move(occupied), padding};
  if (padding == PaddingPolicy::SearchNeutral) {
    for (NodeId id = static_cast<NodeId>(elements.size() + 1); id < topo->size(); ++id) {
      tree.cfg.node(id).flags.perm_disabled = true;
    }
  }
  tree.cfg.reset(mode);
  return tree;
}

SearchResult search(LoadedTree& tree, std::uint64_t key, bool collect_matches,
                    const Tracer* tracer) {
  if (tree.padding != PaddingPolicy::SearchNeutral) {
    throw std::logic_error("tree not loaded for search");
  }
  auto& cfg = tree.cfg;
  const auto& topo = cfg.topology();
  check_range(key, topo.word_size());
  cfg.node(kRoot).word = BitWord(topo.word_size(), key);
  cfg.reset(Mode::Search);

  // A node's comparison is final once its clock reaches w; its next receive
  // starts Phase 2 and clears the flag, so latch it at that moment.
  const auto w = static_cast<std::uint64_t>(topo.word_size());
  std::vector<bool> latched(topo.size(), false);
  StepObserver observer;
  if (collect_matches) {
    observer = [&](const Configuration& c) {
      for (const NodeId id : tree.occupied) {
        const auto& node = c.node(id);
        if (node.local_clock == w) latched[id] = node.flags.match;
      }
    };
  }

  SearchResult r;
  if (tracer) begin_segment(cfg, *tracer);
  r.cycles = run_until_quiescent(cfg, default_cycle_budget(topo.params()), Stop::Quiescent, tracer,
                                 observer);
  r.found = cfg.node(kRoot).flags.state;
  if (collect_matches) {
    for (const NodeId id : tree.occupied) {
      if (latched[id]) r.matched_nodes.push_back(id);
    }
  }
  return r;
}

ExtremumResult compute_max(LoadedTree& tree, const Tracer* tracer) {
  return run_extremum(tree, Mode::Max, PaddingPolicy::MaxIdentity, tracer);
}

ExtremumResult compute_min(LoadedTree& tree, const Tracer* tracer) {
  return run_extremum(tree, Mode::Min, PaddingPolicy::MinIdentity, tracer);
}

SortResult sort(std::shared_ptr<const CayleyTopology> topo, std::span<const std::uint64_t> elements,
                SortOrder order, const Tracer* tracer) {
  const bool desc = order == SortOrder::Descending;
  const Mode extremum = desc ? Mode::Max : Mode::Min;
  LoadedTree tree = load_list(topo, elements, extremum);
  auto& cfg = tree.cfg;
  const int w = topo->word_size();
  const auto budget = default_cycle_budget(topo->params());

  // Empty slots must never be reported, so they start permanently disabled.
  for (NodeId id = static_cast<NodeId>(elements.size() + 1); id < topo->size(); ++id) {
    cfg.node(id).flags.perm_disabled = true;
  }

  auto remaining = [&] {
    for (const NodeId id : tree.occupied) {
      if (!cfg.node(id).flags.perm_disabled) return true;
    }
    return false;
  };

  SortResult result;
  result.output.reserve(elements.size());
  while (remaining()) {
    std::uint64_t round = 0;
    std::optional<Tracer> local;
    auto trace_here = [&]() -> const Tracer* {
      if (!tracer) return nullptr;
      local = shifted(*tracer, result.cycles_total + round);
      return &*local;
    };

    // Phase A: extremum over the still-enabled words.
    cfg.node(kRoot).word = BitWord(w, desc ? 0 : BitWord::max_value(w));
    cfg.reset(extremum);
    if (const Tracer* t = trace_here()) begin_segment(cfg, *t);
    round += run_until_quiescent(cfg, budget, Stop::Quiescent, trace_here());
    const std::uint64_t value = cfg.node(kRoot).word.value();

    // Phase B: report, reset for search, locate every holder of `value`.
    round += kResetCycles;
    cfg.reset(Mode::Search);
    cfg.set_search_scope(SearchScope::Phase1Only);
    if (const Tracer* t = trace_here()) begin_segment(cfg, *t);
    round += run_until_quiescent(cfg, budget, Stop::SearchPhase1, trace_here());

    std::uint64_t hits = 0;
    for (const NodeId id : tree.occupied) {
      auto& f = cfg.node(id).flags;
      if (f.match && !f.perm_disabled) {
        f.perm_disabled = true;
        result.output.push_back(value);
        ++hits;
      }
    }
    if (hits == 0) {
      throw std::logic_error("sort round reported " + std::to_string(value) +
                             " but no enabled node matched it");
    }
    round += kResetCycles;

    result.per_round_cycles.push_back(round);
    result.cycles_total += round;
    ++result.rounds;
  }
  cfg.reset(Mode::Idle);
  return result;
}

std::uint64_t resource_report(const TreeParams& params, Scheme scheme) {
  validate(params);
  const std::uint64_t n = node_count(params.eta, params.height);
  switch (scheme) {
    case Scheme::Search:
      return 3 * n;
    case Scheme::Sort:
      return n * (static_cast<std::uint64_t>(params.word_size) + params.eta + 5);
  }
  return 0;
}

}  // namespace cayley
