#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Brute-force references. Nothing here may depend on the simulator.
namespace cayley::oracle {

enum class Extremum : std::uint8_t { Max, Min };

bool search(std::span<const std::uint64_t> elements, std::uint64_t key);
std::uint64_t extremum(std::span<const std::uint64_t> elements, Extremum which,
                       std::uint64_t identity);
std::vector<std::uint64_t> sort_desc(std::span<const std::uint64_t> elements);

struct Report {
  std::string expected;
  bool agreed = false;
  std::string detail;
};

Report compare(const std::vector<std::uint64_t>& expected, const std::vector<std::uint64_t>& actual);

// Classic comparison sorts used as the baseline set. Each sorts descending
// and counts element comparisons (radix counts digit passes instead).
enum class Baseline : std::uint8_t { Insertion, Selection, Bubble, Merge, Heap, Quick, Radix };

inline constexpr Baseline kAllBaselines[] = {Baseline::Insertion, Baseline::Selection,
                                             Baseline::Bubble,    Baseline::Merge,
                                             Baseline::Heap,      Baseline::Quick,
                                             Baseline::Radix};

const char* to_string(Baseline b);

struct BaselineRun {
  std::vector<std::uint64_t> output;
  std::uint64_t comparisons = 0;
};

BaselineRun run_baseline(Baseline b, std::span<const std::uint64_t> elements);

}  // namespace cayley::oracle
