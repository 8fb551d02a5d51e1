// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cayley/algorithms.hpp"
#include "cayley/engine.hpp"
#include "cayley/oracle.hpp"
#include "cayley/topology.hpp"
#include "support/fuzz.hpp"

namespace {

using namespace cayley;
using List = std::vector<std::uint64_t>;

// Cycle-accounting constants, derived once from the worked examples
// (eta=2, h=3, w=4) and frozen here:
//   search example: 10 cycles = w + 2h + 0
//   max example:     6 cycles = h + w + 1 - 2
//   sort round:     14 cycles = 2(w + h + 1) - 2
constexpr std::int64_t kSearchConst = 0;
constexpr std::int64_t kMaxConst = -2;
constexpr std::int64_t kSortRoundConst = -2;

constexpr int kFuzzCases = 10000;
constexpr int kSubtreeCases = 1000;

const List kSearchList = {14, 9, 6, 10, 14, 7, 11, 11, 10};
const List kMaxList = {14, 9, 5, 14, 7, 11, 10, 10};

std::shared_ptr<const CayleyTopology> make_topo(const TreeParams& p) {
  return std::make_shared<const CayleyTopology>(p);
}

struct Criterion {
  std::string name;
  double limit_seconds;  // 0: no time bound
  std::function<std::string()> body;  // empty string: pass; otherwise why it failed
};

class Failures {
 public:
  template <typename... Args>
  void add(const char* fmt, Args... args) {
    ++count_;
    if (first_.empty()) {
      if constexpr (sizeof...(Args) == 0) {
        first_ = fmt;
      } else {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        first_ = buf;
      }
    }
  }
  std::string verdict() const {
    if (count_ == 0) return {};
    return std::to_string(count_) + " failure(s); first: " + first_;
  }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

std::int64_t signed_cycles(std::uint64_t c) { return static_cast<std::int64_t>(c); }

// Watches trace events of one run and counts forbidden flag transitions:
// match 0 -> 1 in search, root state 1 -> 0 once it is listening for
// matches, and any link 1 -> 0 inside a max/min run.
class FlagMonitor {
 public:
  Tracer tracer() {
    Tracer t;
    t.on_segment = [this](Mode m) {
      mode_ = m;
      base_cycle_.reset();
      std::fill(seen_.begin(), seen_.end(), false);
    };
    t.sink = [this](const TraceEvent& ev) { observe(ev); };
    return t;
  }
  void set_word_size(int w) { w_ = static_cast<std::uint64_t>(w); }
  std::uint64_t violations() const { return violations_; }
  std::uint64_t transitions() const { return transitions_; }
  const std::string& first() const { return first_; }

 private:
  void flag(const TraceEvent& ev, const char* what) {
    if (violations_++ == 0) {
      first_ = std::string(what) + " at node " + std::to_string(ev.node) + " cycle " +
               std::to_string(ev.cycle);
    }
  }

  void observe(const TraceEvent& ev) {
    if (!base_cycle_) base_cycle_ = ev.cycle;
    const auto local = ev.cycle - *base_cycle_;
    if (prev_.size() <= ev.node) {
      prev_.resize(ev.node + 1);
      seen_.resize(ev.node + 1, false);
    }
    auto& prev = prev_[ev.node];
    if (seen_[ev.node]) {
      ++transitions_;
      const auto& a = prev;
      const auto& b = ev.flags;
      if (mode_ == Mode::Search) {
        if (ev.node != kRoot && !a.match && b.match) flag(ev, "match 0->1");
        // Root receives in Phase 2 from step w+1 on; compare steps inside it.
        if (ev.node == kRoot && local >= w_ + 2 && a.state && !b.state) flag(ev, "root state 1->0");
      } else {
        for (std::size_t i = 0; i < a.link_child.size(); ++i) {
          if (a.link_child[i] && !b.link_child[i]) flag(ev, "child link 1->0");
        }
        if (a.link_mem && !b.link_mem) flag(ev, "memory link 1->0");
      }
    }
    prev = ev.flags;
    seen_[ev.node] = true;
  }

  Mode mode_ = Mode::Idle;
  std::uint64_t w_ = 0;
  std::optional<std::uint64_t> base_cycle_;
  std::vector<NodeFlags> prev_;
  std::vector<bool> seen_;
  std::uint64_t violations_ = 0;
  std::uint64_t transitions_ = 0;
  std::string first_;
};

// Shared by the fuzz, sort-structure and monotonicity criteria.
struct FuzzTotals {
  bool ran = false;
  double seconds = 0;
  Failures search, max, min, sort, rounds, round_cycles;
  std::uint64_t cases = 0;
  FlagMonitor monitor;
};

FuzzTotals& fuzz() {
  static FuzzTotals totals;
  if (totals.ran) return totals;
  totals.ran = true;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20240601);
  Tracer tracer = totals.monitor.tracer();
  for (int i = 0; i < kFuzzCases; ++i) {
    const auto inst = testing::random_instance(gen);
    const auto topo = make_topo(inst.params);
    const int w = inst.params.word_size;
    const std::uint64_t ones = BitWord::max_value(w);
    const auto& xs = inst.elements;
    totals.monitor.set_word_size(w);

    auto s = load_list(topo, xs, Mode::Search, inst.key);
    const bool found = search(s, inst.key, false, &tracer).found;
    if (found != oracle::search(xs, inst.key)) totals.search.add("case %d key %llu", i, (unsigned long long)inst.key);

    auto mx = load_list(topo, xs, Mode::Max);
    const auto max_v = compute_max(mx, &tracer).value;
    if (max_v != oracle::extremum(xs, oracle::Extremum::Max, 0)) totals.max.add("case %d got %llu", i, (unsigned long long)max_v);

    auto mn = load_list(topo, xs, Mode::Min);
    const auto min_v = compute_min(mn, &tracer).value;
    if (min_v != oracle::extremum(xs, oracle::Extremum::Min, ones)) totals.min.add("case %d got %llu", i, (unsigned long long)min_v);

    const auto r = sort(topo, xs, SortOrder::Descending, &tracer);
    if (r.output != oracle::sort_desc(xs)) totals.sort.add("case %d", i);
    const std::set<std::uint64_t> distinct(xs.begin(), xs.end());
    if (r.rounds != distinct.size()) {
      totals.rounds.add("case %d: %llu rounds for %zu distinct", i, (unsigned long long)r.rounds, distinct.size());
    }
    const std::int64_t bound = 2 * (w + inst.params.height + 1) + kSortRoundConst;
    for (const auto c : r.per_round_cycles) {
      if (signed_cycles(c) > bound) totals.round_cycles.add("case %d: round took %llu > %lld", i, (unsigned long long)c, (long long)bound);
    }
    ++totals.cases;
  }
  totals.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return totals;
}

std::string node_count_formula() {
  Failures f;
  for (int eta = 1; eta <= 4; ++eta) {
    for (int h = 1; h <= 8; ++h) {
      const auto built = build_topology({eta, h, 4});
      // count by walking the structure from the root
      const auto reached = built.subtree(kRoot).size();
      const auto formula = node_count(eta, h);
      if (reached != formula || built.size() != formula || testing::count_by_construction(eta, h) != formula) {
        f.add("eta=%d h=%d: formula %llu, built %zu", eta, h, (unsigned long long)formula, reached);
      }
    }
  }
  return f.verdict();
}

std::string worked_search() {
  Failures f;
  const auto topo = make_topo({2, 3, 4});
  const std::pair<std::uint64_t, bool> cases[] = {{9, true}, {15, false}, {0, false}};
  for (const auto& [key, expected] : cases) {
    auto tree = load_list(topo, kSearchList, Mode::Search, key);
    const bool found = search(tree, key).found;
    if (found != expected || found != oracle::search(kSearchList, key)) {
      f.add("key %llu: found=%d", (unsigned long long)key, int(found));
    }
  }
  return f.verdict();
}

std::string worked_max() {
  Failures f;
  auto tree = load_list(make_topo({2, 3, 4}), kMaxList, Mode::Max);
  const auto r = compute_max(tree);
  if (r.value != 14) f.add("max %llu, expected 14", (unsigned long long)r.value);
  for (const NodeId id : tree.occupied) {
    const auto& node = tree.cfg.node(id);
    if (!node.flags.perm_disabled && node.word.value() != kMaxList[id - 1]) {
      f.add("node %u word %llu not restored", id, (unsigned long long)node.word.value());
    }
  }
  return f.verdict();
}

std::string oracle_fuzz() {
  auto& t = fuzz();
  std::string out;
  for (const auto* part : {&t.search, &t.max, &t.min, &t.sort}) {
    const auto v = part->verdict();
    if (!v.empty()) out += (out.empty() ? "" : "; ") + v;
  }
  if (t.cases < static_cast<std::uint64_t>(kFuzzCases)) out += "ran only " + std::to_string(t.cases) + " cases";
  if (t.seconds >= 60.0) out += (out.empty() ? "" : "; ") + std::string("fuzz took ") + std::to_string(t.seconds) + " s";
  return out;
}

std::string latency_scaling() {
  Failures f;
  {
    auto s = load_list(make_topo({2, 3, 4}), kSearchList, Mode::Search, 9);
    const auto derived = signed_cycles(search(s, 9).cycles) - (4 + 2 * 3);
    if (derived != kSearchConst) f.add("search constant derived %lld, frozen %lld", (long long)derived, (long long)kSearchConst);
    auto m = load_list(make_topo({2, 3, 4}), kMaxList, Mode::Max);
    const auto derived_m = signed_cycles(compute_max(m).cycles) - (3 + 4 + 1);
    if (derived_m != kMaxConst) f.add("max constant derived %lld, frozen %lld", (long long)derived_m, (long long)kMaxConst);
  }
  std::mt19937_64 gen(77);
  for (const int eta : {2, 3}) {
    const int w = 8;
    const int max_h = eta == 2 ? 10 : 8;
    std::int64_t prev_search = -1, prev_max = -1;
    for (int h = 2; h <= max_h; ++h) {
      const auto topo = make_topo({eta, h, w});
      List xs(std::min<std::uint64_t>(topo->size() - 1, 300));
      for (auto& x : xs) x = gen() & 0xFF;
      for (const std::uint64_t key : {xs.empty() ? 0 : xs.back(), std::uint64_t{256 - 1}}) {
        auto s = load_list(topo, xs, Mode::Search, key);
        const auto c = signed_cycles(search(s, key).cycles);
        if (c != w + 2 * h + kSearchConst) f.add("search eta=%d h=%d: %lld cycles", eta, h, (long long)c);
        if (prev_search >= 0 && c - prev_search != 2) f.add("search not linear at eta=%d h=%d", eta, h);
      }
      prev_search = w + 2 * h + kSearchConst;
      for (const Mode mode : {Mode::Max, Mode::Min}) {
        auto m = load_list(topo, xs, mode);
        const auto c = signed_cycles((mode == Mode::Max ? compute_max(m) : compute_min(m)).cycles);
        if (c != h + w + 1 + kMaxConst) f.add("%s eta=%d h=%d: %lld cycles", to_string(mode), eta, h, (long long)c);
        if (prev_max >= 0 && mode == Mode::Max && c - prev_max != 1) f.add("max not linear at eta=%d h=%d", eta, h);
        if (mode == Mode::Max) prev_max = c;
      }
    }
  }
  return f.verdict();
}

std::string sort_rounds() {
  Failures f;
  {
    const auto r = sort(make_topo({2, 3, 4}), kSearchList);
    const auto derived = signed_cycles(r.per_round_cycles.front()) - 2 * (4 + 3 + 1);
    if (derived != kSortRoundConst) f.add("round constant derived %lld, frozen %lld", (long long)derived, (long long)kSortRoundConst);
  }
  for (const int eta : {2, 3}) {
    for (int h = 2; h <= 5; ++h) {
      const auto topo = make_topo({eta, h, 8});
      const List same(topo->size() - 1, 0xA5);
      const auto r = sort(topo, same);
      if (r.rounds != 1 || r.output != same) f.add("all-equal eta=%d h=%d: %llu rounds", eta, h, (unsigned long long)r.rounds);
    }
  }
  auto& t = fuzz();
  std::string out = f.verdict();
  for (const auto* part : {&t.rounds, &t.round_cycles}) {
    const auto v = part->verdict();
    if (!v.empty()) out += (out.empty() ? "" : "; ") + v;
  }
  return out;
}

std::string space_claims() {
  Failures f;
  for (int eta = 1; eta <= 4; ++eta) {
    for (int h = 1; h <= 8; ++h) {
      for (const int w : {1, 4, 8, 16, 32}) {
        const TreeParams p{eta, h, w};
        const auto n = node_count(eta, h);
        if (resource_report(p, Scheme::Search) != 3 * n) f.add("search eta=%d h=%d", eta, h);
        if (resource_report(p, Scheme::Sort) != n * static_cast<std::uint64_t>(w + eta + 5)) f.add("sort eta=%d h=%d w=%d", eta, h, w);
      }
    }
  }
  if (resource_report({2, 3, 4}, Scheme::Search) != 30) f.add("search example");
  if (resource_report({2, 3, 4}, Scheme::Sort) != 110) f.add("sort example");
  return f.verdict();
}

std::string monotonicity() {
  auto& t = fuzz();
  if (t.monitor.transitions() == 0) return "no transitions observed";
  if (t.monitor.violations() != 0) {
    return std::to_string(t.monitor.violations()) + " violation(s); first: " + t.monitor.first();
  }
  return {};
}

std::string disabled_subtrees() {
  Failures f;
  std::mt19937_64 gen(4242);
  std::uint64_t mutations = 0;
  for (int i = 0; i < kSubtreeCases; ++i) {
    TreeParams p;
    p.eta = 2 + static_cast<int>(gen() % 2);
    p.height = 3 + static_cast<int>(gen() % 3);
    p.word_size = (gen() & 1) ? 8 : 6;
    const auto topo = make_topo(p);
    const std::uint64_t mask = BitWord::max_value(p.word_size);
    // Shared high bits and duplicates keep links alive deep into the word.
    const std::uint64_t base = gen() & mask & ~std::uint64_t{7};
    List xs(topo->size() - 1 - gen() % 3);
    for (auto& x : xs) x = base | (gen() & 7);
    const Mode mode = (i & 1) ? Mode::Min : Mode::Max;

    auto reference = load_list(topo, xs, mode);
    const auto expected = (mode == Mode::Max ? compute_max(reference) : compute_min(reference)).value;

    auto tree = load_list(topo, xs, mode);
    auto& cfg = tree.cfg;
    const auto budget = default_cycle_budget(p);
    std::uint64_t steps = 0;
    while (!is_quiescent(cfg)) {
      if (++steps > budget) {
        f.add("case %d never quiesced", i);
        break;
      }
      step(cfg);
      for (NodeId u = 0; u < topo->size(); ++u) {
        const auto kids = topo->children(u);
        for (std::size_t c = 0; c < kids.size(); ++c) {
          if (!cfg.node(u).flags.link_child[c]) continue;
          for (const NodeId v : topo->subtree(kids[c])) {
            cfg.node(v).word = BitWord(p.word_size, gen() & mask);
            ++mutations;
          }
        }
      }
    }
    const auto got = cfg.node(kRoot).word.value();
    if (got != expected) f.add("case %d (%s): %llu vs %llu", i, to_string(mode), (unsigned long long)got, (unsigned long long)expected);
  }
  if (mutations == 0) f.add("no disabled subtree was ever mutated");
  return f.verdict();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"node-count formula vs construct-and-count", 1.0, node_count_formula},
      {"worked example: search", 1.0, worked_search},
      {"worked example: max with word restoration", 1.0, worked_max},
      {"oracle equivalence fuzz (1e4 per scheme)", 60.0, oracle_fuzz},
      {"latency scaling vs frozen formulas", 0, latency_scaling},
      {"sort round structure", 0, sort_rounds},
      {"space-claim arithmetic", 0, space_claims},
      {"monotonicity invariants over fuzz traces", 0, monotonicity},
      {"disabled-subtree soundness (1e3 cases)", 0, disabled_subtrees},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.body();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && c.limit_seconds > 0 && secs >= c.limit_seconds) {
      why = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    }
    std::printf("[%s] %s (%.3f s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.name.c_str(), secs,
                why.empty() ? "" : " -- ", why.c_str());
    failed += !why.empty();
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
