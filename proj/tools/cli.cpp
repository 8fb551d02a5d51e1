#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cayley/algorithms.hpp"
#include "cayley/oracle.hpp"
#include "cayley/topology.hpp"
#include "cayley/trace.hpp"

namespace cayley::cli {
namespace {

using nlohmann::ordered_json;

const char* command_name(Command c) {
  switch (c) {
    case Command::Search: return "search";
    case Command::Max: return "max";
    case Command::Min: return "min";
    case Command::Sort: return "sort";
    case Command::Trace: return "trace";
    case Command::Info: return "info";
    case Command::Bench: return "bench";
  }
  return "?";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::uint64_t> random_list(std::uint64_t seed, std::size_t count, int w) {
  std::mt19937_64 gen(seed);
  const std::uint64_t mask = BitWord::max_value(w);
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) v = gen() & mask;
  return out;
}

std::vector<std::uint64_t> load_elements(const RunSpec& spec) {
  if (spec.input_path && spec.inline_list) throw InputError("use either --input or --list, not both");
  if (spec.input_path) return parse_input(read_file(*spec.input_path), spec.word_size);
  if (spec.inline_list) return parse_input(*spec.inline_list, spec.word_size);
  if (spec.seed) return random_list(*spec.seed, spec.count, spec.word_size);
  return {};
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Line-oriented or single JSON object, in insertion order.
class ResultBlock {
 public:
  template <typename T>
  void add(const std::string& key, const T& value) {
    j_[key] = value;
  }
  void print(std::ostream& out, bool json) const {
    if (json) {
      out << j_.dump() << '\n';
      return;
    }
    for (const auto& [k, v] : j_.items()) {
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }

 private:
  ordered_json j_ = ordered_json::object();
};

struct TraceFile {
  std::ofstream file;
  std::optional<Tracer> tracer;

  explicit TraceFile(const std::optional<std::string>& path) {
    if (!path) return;
    file.open(*path);
    if (!file) throw InputError("cannot open trace output '" + *path + "'");
    tracer = line_tracer(file);
  }
  const Tracer* get() const { return tracer ? &*tracer : nullptr; }
};

int run_bench(const RunSpec& spec, const std::vector<std::uint64_t>& base, std::ostream& out) {
  constexpr int kLists = 4;
  const std::uint64_t seed = spec.seed.value_or(1);
  std::vector<std::vector<std::uint64_t>> lists;
  for (int i = 0; i < kLists; ++i) {
    lists.push_back(base.empty() ? random_list(seed + i, spec.count, spec.word_size) : base);
  }

  struct Row {
    std::string name;
    std::uint64_t work = 0;
    double micros = 0;
    bool agreed = true;
  };
  auto time_it = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::pair{std::move(r), std::chrono::duration<double, std::micro>(t1 - t0).count()};
  };

  // One task per input list; merged in list order.
  std::vector<std::future<std::vector<Row>>> tasks;
  for (const auto& list : lists) {
    tasks.push_back(std::async(std::launch::async, [&spec, list, &time_it] {
      std::vector<Row> rows;
      const auto expected = oracle::sort_desc(list);
      const int h = spec.height.value_or(required_height(spec.eta, list.size()));
      auto topo = std::make_shared<const CayleyTopology>(TreeParams{spec.eta, h, spec.word_size});
      auto [res, us] = time_it([&] { return sort(topo, list); });
      rows.push_back({"in-memory", res.cycles_total, us, res.output == expected});
      for (const auto b : oracle::kAllBaselines) {
        auto [run, bus] = time_it([&] { return oracle::run_baseline(b, list); });
        rows.push_back({oracle::to_string(b), run.comparisons, bus, run.output == expected});
      }
      return rows;
    }));
  }

  std::vector<Row> totals;
  for (auto& t : tasks) {
    auto rows = t.get();
    if (totals.empty()) totals.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      totals[i].name = rows[i].name;
      totals[i].work += rows[i].work;
      totals[i].micros += rows[i].micros;
      totals[i].agreed = totals[i].agreed && rows[i].agreed;
    }
  }

  bool all = true;
  if (spec.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : totals) {
      arr.push_back({{"algorithm", r.name}, {"work", r.work}, {"micros", r.micros}, {"agreed", r.agreed}});
      all = all && r.agreed;
    }
    out << ordered_json{{"lists", kLists}, {"length", lists[0].size()}, {"rows", arr}}.dump() << '\n';
  } else {
    out << "lists: " << kLists << "  length: " << lists[0].size() << "  w: " << spec.word_size
        << "  eta: " << spec.eta << '\n';
    out << "algorithm   work(cycles|comparisons)   wall_us   agrees\n";
    for (const auto& r : totals) {
      out << r.name << std::string(12 - std::min<std::size_t>(11, r.name.size()), ' ') << r.work
          << "   " << static_cast<std::uint64_t>(r.micros) << "   " << (r.agreed ? "yes" : "NO") << '\n';
      all = all && r.agreed;
    }
  }
  return all ? 0 : 2;
}

}  // namespace

std::vector<std::uint64_t> parse_input(std::string_view text, int word_size) {
  if (word_size < 1 || word_size > 63) throw InputError("word size must be in [1, 63]");
  const std::uint64_t limit = BitWord::max_value(word_size);
  std::vector<std::uint64_t> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view row = text.substr(pos, eol - pos);
    const std::size_t first = row.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || row[first] != '#') {
      std::size_t i = 0;
      while (i < row.size()) {
        const char ch = row[i];
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
          ++i;
          continue;
        }
        const std::size_t col = i + 1;
        std::size_t j = i;
        while (j < row.size() && row[j] != ' ' && row[j] != '\t' && row[j] != '\r' && row[j] != ',') ++j;
        const std::string_view tok = row.substr(i, j - i);
        std::uint64_t value = 0;
        bool overflow = false;
        for (const char c : tok) {
          if (c < '0' || c > '9') {
            throw InputError("malformed token '" + std::string(tok) + "' at line " +
                             std::to_string(line) + ", column " + std::to_string(col));
          }
          const auto digit = static_cast<std::uint64_t>(c - '0');
          if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) overflow = true;
          value = value * 10 + digit;
        }
        if (overflow || value > limit) {
          throw InputError("value " + std::string(tok) + " at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + " does not fit in w=" +
                           std::to_string(word_size) + " bits");
        }
        out.push_back(value);
        i = j;
      }
    }
    pos = eol + 1;
    ++line;
  }
  return out;
}

int execute(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.command == Command::Search && !spec.key) throw InputError("search requires --key");
    if (spec.command != Command::Search && spec.key) throw InputError("--key is only valid for search");
    if (spec.order != "desc" && spec.order != "asc") throw InputError("--order must be desc or asc");

    const auto elements = load_elements(spec);
    if (spec.command == Command::Bench) return run_bench(spec, elements, out);

    const int fit = required_height(spec.eta, elements.size());
    int h = fit;
    if (spec.height) {
      if (*spec.height < fit && !(spec.command == Command::Info && *spec.height >= 1)) {
        throw InputError("--height " + std::to_string(*spec.height) + " cannot hold " +
                         std::to_string(elements.size()) + " elements; need at least " +
                         std::to_string(fit));
      }
      h = *spec.height;
    }
    const TreeParams params{spec.eta, h, spec.word_size};
    auto topo = std::make_shared<const CayleyTopology>(params);

    ResultBlock block;
    block.add("command", command_name(spec.command));
    block.add("eta", params.eta);
    block.add("h", params.height);
    block.add("w", params.word_size);
    block.add("n", topo->size());
    block.add("elements", elements.size());

    bool agreed = true;
    auto verdict = [&](const oracle::Report& r) {
      agreed = r.agreed;
      block.add("oracle", r.agreed ? std::string("agree") : "DIVERGED (" + r.detail + ")");
    };

    switch (spec.command) {
      case Command::Info:
        block.add("leaves", topo->leaf_count());
        block.add("slots", topo->size() - 1);
        block.add("search_overhead_bits", resource_report(params, Scheme::Search));
        block.add("sort_overhead_bits", resource_report(params, Scheme::Sort));
        break;
      case Command::Search: {
        TraceFile trace(spec.trace_out);
        auto tree = load_list(topo, elements, Mode::Search, *spec.key);
        const auto r = search(tree, *spec.key, false, trace.get());
        block.add("key", *spec.key);
        block.add("answer", r.found ? "found" : "not found");
        block.add("cycles", r.cycles);
        block.add("flag_overhead_bits", resource_report(params, Scheme::Search));
        if (spec.verify) {
          const bool expect = oracle::search(elements, *spec.key);
          verdict({expect ? "found" : "not found", expect == r.found,
                   expect == r.found ? "" : std::string("oracle says ") + (expect ? "found" : "not found")});
        }
        break;
      }
      case Command::Max:
      case Command::Min: {
        TraceFile trace(spec.trace_out);
        const bool max = spec.command == Command::Max;
        auto tree = load_list(topo, elements, max ? Mode::Max : Mode::Min);
        const auto r = max ? compute_max(tree, trace.get()) : compute_min(tree, trace.get());
        block.add("answer", r.value);
        block.add("cycles", r.cycles);
        block.add("flag_overhead_bits", resource_report(params, Scheme::Sort));
        if (spec.verify) {
          const auto expect = oracle::extremum(elements, max ? oracle::Extremum::Max : oracle::Extremum::Min,
                                               max ? 0 : BitWord::max_value(params.word_size));
          verdict(oracle::compare({expect}, {r.value}));
        }
        break;
      }
      case Command::Sort: {
        TraceFile trace(spec.trace_out);
        const auto order = spec.order == "asc" ? SortOrder::Ascending : SortOrder::Descending;
        const auto r = sort(topo, elements, order, trace.get());
        block.add("order", spec.order);
        block.add("answer", join(r.output));
        block.add("rounds", r.rounds);
        block.add("cycles", r.cycles_total);
        block.add("flag_overhead_bits", resource_report(params, Scheme::Sort));
        if (spec.verify) {
          auto expect = oracle::sort_desc(elements);
          if (order == SortOrder::Ascending) std::reverse(expect.begin(), expect.end());
          verdict(oracle::compare(expect, r.output));
        }
        break;
      }
      case Command::Trace: {
        std::ofstream file;
        std::ostream* sink = &out;
        if (spec.trace_out) {
          file.open(*spec.trace_out);
          if (!file) throw InputError("cannot open trace output '" + *spec.trace_out + "'");
          sink = &file;
        }
        const Tracer tracer = line_tracer(*sink);
        std::uint64_t cycles = 0;
        std::string answer;
        if (spec.scheme == "search") {
          const std::uint64_t key = elements.empty() ? 0 : elements.front();
          auto tree = load_list(topo, elements, Mode::Search, key);
          const auto r = search(tree, key, false, &tracer);
          cycles = r.cycles;
          answer = r.found ? "found" : "not found";
        } else if (spec.scheme == "max" || spec.scheme == "min") {
          const bool max = spec.scheme == "max";
          auto tree = load_list(topo, elements, max ? Mode::Max : Mode::Min);
          const auto r = max ? compute_max(tree, &tracer) : compute_min(tree, &tracer);
          cycles = r.cycles;
          answer = std::to_string(r.value);
        } else if (spec.scheme == "sort") {
          const auto r = sort(topo, elements, SortOrder::Descending, &tracer);
          cycles = r.cycles_total;
          answer = join(r.output);
        } else {
          throw InputError("--scheme must be search, max, min or sort");
        }
        // The trace owns stdout unless it went to a file.
        if (spec.trace_out) {
          block.add("scheme", spec.scheme);
          block.add("answer", answer);
          block.add("cycles", cycles);
          block.print(out, spec.json);
        }
        return 0;
      }
      case Command::Bench:
        break;
    }
    block.print(out, spec.json);
    return agreed ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-accurate Cayley-tree in-memory computing simulator"};
  app.require_subcommand(1);
  RunSpec spec;
  std::optional<std::uint64_t> key;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--eta", spec.eta, "Tree order (children per internal node)")->check(CLI::Range(1, 64));
    sub->add_option("--word-size", spec.word_size, "Bits per memory word")->check(CLI::Range(1, 63));
    sub->add_option("--height", spec.height, "Tree height (default: smallest that fits)");
    sub->add_option("--input", spec.input_path, "File with the input list");
    sub->add_option("--list", spec.inline_list, "Inline list, e.g. 14,9,6");
    sub->add_option("--seed", spec.seed, "Generate a random list from this seed");
    sub->add_option("--count", spec.count, "Length of the generated list");
    sub->add_option("--trace-out", spec.trace_out, "Write the per-cycle trace stream here");
    sub->add_flag_callback("--no-verify", [&] { spec.verify = false; }, "Skip the oracle check");
    sub->add_flag("--json", spec.json, "Print the result block as one JSON object");
  };

  struct Sub {
    Command cmd;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::Search, "search", "Search the list for --key"},
      {Command::Max, "max", "Compute the maximum in memory"},
      {Command::Min, "min", "Compute the minimum in memory"},
      {Command::Sort, "sort", "Sort the list in memory"},
      {Command::Trace, "trace", "Emit the cycle trace of one scheme"},
      {Command::Info, "info", "Tree dimensions and flag overhead"},
      {Command::Bench, "bench", "Compare the in-memory sort with classic sorts"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (s.cmd == Command::Search) sub->add_option("--key", key, "Search key")->required();
    if (s.cmd == Command::Sort) {
      sub->add_option("--order", spec.order, "desc or asc")->check(CLI::IsMember({"desc", "asc"}));
    }
    if (s.cmd == Command::Trace) {
      sub->add_option("--scheme", spec.scheme, "search, max, min or sort")
          ->check(CLI::IsMember({"search", "max", "min", "sort"}));
    }
    sub->callback([&spec, cmd = s.cmd] { spec.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  spec.key = key;
  return execute(spec, out, err);
}

}  // namespace cayley::cli
