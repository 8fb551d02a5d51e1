#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cayley/engine.hpp"
#include "cayley/topology.hpp"

namespace cayley {

enum class PaddingPolicy : std::uint8_t { SearchNeutral, MaxIdentity, MinIdentity };

struct LoadedTree {
  Configuration cfg;
  std::vector<NodeId> occupied;  // non-root slots holding real elements
  PaddingPolicy padding;
};

struct SearchResult {
  bool found = false;
  std::uint64_t cycles = 0;
  std::vector<NodeId> matched_nodes;  // only when match collection was requested
};

struct ExtremumResult {
  std::uint64_t value = 0;
  std::uint64_t cycles = 0;
};

enum class SortOrder : std::uint8_t { Descending, Ascending };

struct SortResult {
  std::vector<std::uint64_t> output;
  std::uint64_t cycles_total = 0;
  std::uint64_t rounds = 0;
  std::vector<std::uint64_t> per_round_cycles;
};

// A flag reset between phases costs one cycle in sort accounting.
inline constexpr std::uint64_t kResetCycles = 1;

/// Places `elements` on non-root nodes in id order and pads the rest.
/// Mode::Search expects `key` for the root word; Max/Min ignore it.
LoadedTree load_list(std::shared_ptr<const CayleyTopology> topo,
                     std::span<const std::uint64_t> elements, Mode mode, std::uint64_t key = 0);

SearchResult search(LoadedTree& tree, std::uint64_t key, bool collect_matches = false,
                    const Tracer* tracer = nullptr);
ExtremumResult compute_max(LoadedTree& tree, const Tracer* tracer = nullptr);
ExtremumResult compute_min(LoadedTree& tree, const Tracer* tracer = nullptr);

/// Repeated extremum + search-and-disable rounds until every element has
/// been reported. Descending uses max, ascending uses min.
SortResult sort(std::shared_ptr<const CayleyTopology> topo, std::span<const std::uint64_t> elements,
                SortOrder order = SortOrder::Descending, const Tracer* tracer = nullptr);

enum class Scheme : std::uint8_t { Search, Sort };

/// Flag-overhead bits: 3n for search, n (w + eta + 5) for sort.
std::uint64_t resource_report(const TreeParams& params, Scheme scheme);

}  // namespace cayley
