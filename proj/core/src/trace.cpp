#include "cayley/trace.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cayley {
namespace {

using nlohmann::json;

Role parse_role(const std::string& s) {
  if (s == "root") return Role::Root;
  if (s == "intermediate") return Role::Intermediate;
  if (s == "leaf") return Role::Leaf;
  throw std::invalid_argument("unknown role '" + s + "'");
}

}  // namespace

std::string to_json_line(const TraceEvent& ev) {
  json emitted = json::object();
  if (ev.emitted.parent) emitted["parent"] = static_cast<int>(*ev.emitted.parent);
  for (std::size_t i = 0; i < ev.emitted.children.size(); ++i) {
    if (ev.emitted.children[i]) emitted["c" + std::to_string(i)] = static_cast<int>(*ev.emitted.children[i]);
  }
  json links = json::array();
  for (const bool l : ev.flags.link_child) links.push_back(static_cast<int>(l));

  json j = {
      {"cycle", ev.cycle},
      {"node", ev.node},
      {"depth", ev.depth},
      {"role", to_string(ev.role)},
      {"word", ev.word},
      {"state", static_cast<int>(ev.flags.state)},
      {"start", static_cast<int>(ev.flags.start)},
      {"match", static_cast<int>(ev.flags.match)},
      {"l_m", static_cast<int>(ev.flags.link_mem)},
      {"l_children", std::move(links)},
      {"perm_disabled", static_cast<int>(ev.flags.perm_disabled)},
      {"emitted", std::move(emitted)},
  };
  return j.dump();
}

TraceEvent parse_trace_line(const std::string& line) {
  const json j = json::parse(line);
  TraceEvent ev;
  ev.cycle = j.at("cycle").get<std::uint64_t>();
  ev.node = j.at("node").get<NodeId>();
  ev.depth = j.at("depth").get<int>();
  ev.role = parse_role(j.at("role").get<std::string>());
  ev.word = j.at("word").get<std::uint64_t>();
  ev.flags.state = j.at("state").get<int>() != 0;
  ev.flags.start = j.at("start").get<int>() != 0;
  ev.flags.match = j.at("match").get<int>() != 0;
  ev.flags.link_mem = j.at("l_m").get<int>() != 0;
  ev.flags.perm_disabled = j.at("perm_disabled").get<int>() != 0;
  for (const auto& l : j.at("l_children")) ev.flags.link_child.push_back(l.get<int>() != 0);
  ev.emitted.children.resize(ev.flags.link_child.size());
  for (const auto& [port, bit] : j.at("emitted").items()) {
    const bool b = bit.get<int>() != 0;
    if (port == "parent") {
      ev.emitted.parent = b;
    } else if (port.size() > 1 && port[0] == 'c') {
      const auto index = std::stoul(port.substr(1));
      if (index >= ev.emitted.children.size()) throw std::invalid_argument("emitted port out of range: " + port);
      ev.emitted.children[index] = b;
    } else {
      throw std::invalid_argument("unknown emitted port '" + port + "'");
    }
  }
  return ev;
}

std::vector<TraceEvent> read_trace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    events.push_back(parse_trace_line(line));
  }
  return events;
}

Tracer line_tracer(std::ostream& out) {
  Tracer t;
  t.sink = [&out](const TraceEvent& ev) { out << to_json_line(ev) << '\n'; };
  return t;
}

Configuration configuration_from_snapshot(std::shared_ptr<const CayleyTopology> topo, Mode mode,
                                          const std::vector<TraceEvent>& initial) {
  const auto n = topo->size();
  std::vector<std::uint64_t> words(n, 0);
  std::vector<const TraceEvent*> by_node(n, nullptr);
  for (const auto& ev : initial) {
    if (ev.node >= n) throw std::invalid_argument("snapshot names node outside topology");
    if (by_node[ev.node]) throw std::invalid_argument("snapshot lists a node twice");
    by_node[ev.node] = &ev;
    words[ev.node] = ev.word;
  }
  for (NodeId id = 0; id < n; ++id) {
    if (!by_node[id]) throw std::invalid_argument("snapshot misses node " + std::to_string(id));
  }
  Configuration cfg(topo, words);
  cfg.reset(mode);
  for (NodeId id = 0; id < n; ++id) {
    auto& f = cfg.node(id).flags;
    const auto& snap = by_node[id]->flags;
    if (snap.link_child.size() != f.link_child.size()) {
      throw std::invalid_argument("snapshot port count mismatch at node " + std::to_string(id));
    }
    f = snap;
    f.link_parent = false;
  }
  return cfg;
}

}  // namespace cayley
