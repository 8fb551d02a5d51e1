#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "cayley/engine.hpp"

namespace cayley {

// Trace stream: one flat JSON object per line with keys cycle, node, depth,
// role, word, state, start, match, l_m, l_children, perm_disabled, emitted.
// `emitted` maps port names ("parent", "c0", "c1", ...) to the bit driven.

std::string to_json_line(const TraceEvent& ev);
TraceEvent parse_trace_line(const std::string& line);
std::vector<TraceEvent> read_trace(std::istream& in);

/// Tracer that writes every event as a line to `out`.
Tracer line_tracer(std::ostream& out);

/// Rebuilds a configuration from the cycle-0 snapshot of a trace so the run
/// can be replayed. Clocks and inboxes start empty, as after a reset.
Configuration configuration_from_snapshot(std::shared_ptr<const CayleyTopology> topo, Mode mode,
                                          const std::vector<TraceEvent>& initial);

}  // namespace cayley
