#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cayley::cli {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Search, Max, Min, Sort, Trace, Info, Bench };

struct RunSpec {
  Command command = Command::Info;
  int eta = 2;
  int word_size = 8;
  std::optional<int> height;  // empty: smallest height that fits the list
  std::optional<std::string> input_path;
  std::optional<std::string> inline_list;
  std::optional<std::uint64_t> key;
  std::string order = "desc";
  std::string scheme = "max";  // trace only
  std::optional<std::string> trace_out;
  bool verify = true;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::size_t count = 16;  // random list length when seeded
};

/// Whitespace/comma separated non-negative decimals; '#' lines are comments.
std::vector<std::uint64_t> parse_input(std::string_view text, int word_size);

/// Exit status: 0 success, 1 error, 2 oracle divergence.
int execute(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses argv into a RunSpec and runs it.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cayley::cli
