#include "cayley/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cayley::oracle {

bool search(std::span<const std::uint64_t> elements, std::uint64_t key) {
  for (const auto e : elements) {
    if (e == key) return true;
  }
  return false;
}

std::uint64_t extremum(std::span<const std::uint64_t> elements, Extremum which,
                       std::uint64_t identity) {
  if (elements.empty()) return identity;
  std::uint64_t best = elements[0];
  for (const auto e : elements) {
    if (which == Extremum::Max ? e > best : e < best) best = e;
  }
  return best;
}

std::vector<std::uint64_t> sort_desc(std::span<const std::uint64_t> elements) {
  std::vector<std::uint64_t> out(elements.begin(), elements.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Report compare(const std::vector<std::uint64_t>& expected, const std::vector<std::uint64_t>& actual) {
  auto render = [](const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
  };
  Report r;
  r.expected = render(expected);
  r.agreed = expected == actual;
  if (!r.agreed) {
    std::size_t i = 0;
    while (i < expected.size() && i < actual.size() && expected[i] == actual[i]) ++i;
    std::ostringstream os;
    os << "first divergence at index " << i << ": expected "
       << (i < expected.size() ? std::to_string(expected[i]) : "<end>") << ", got "
       << (i < actual.size() ? std::to_string(actual[i]) : "<end>");
    r.detail = os.str();
  }
  return r;
}

const char* to_string(Baseline b) {
  switch (b) {
    case Baseline::Insertion: return "insertion";
    case Baseline::Selection: return "selection";
    case Baseline::Bubble: return "bubble";
    case Baseline::Merge: return "merge";
    case Baseline::Heap: return "heap";
    case Baseline::Quick: return "quick";
    case Baseline::Radix: return "radix";
  }
  return "?";
}

namespace {

using Vec = std::vector<std::uint64_t>;

// `before(a, b)`: a belongs ahead of b in descending order.
struct Counter {
  std::uint64_t n = 0;
  bool before(std::uint64_t a, std::uint64_t b) {
    ++n;
    return a > b;
  }
};

void insertion(Vec& v, Counter& c) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const auto x = v[i];
    std::size_t j = i;
    while (j > 0 && c.before(x, v[j - 1])) {
      v[j] = v[j - 1];
      --j;
    }
    v[j] = x;
  }
}

void selection(Vec& v, Counter& c) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (c.before(v[j], v[best])) best = j;
    }
    std::swap(v[i], v[best]);
  }
}

void bubble(Vec& v, Counter& c) {
  for (std::size_t end = v.size(); end > 1; --end) {
    bool swapped = false;
    for (std::size_t j = 0; j + 1 < end; ++j) {
      if (c.before(v[j + 1], v[j])) {
        std::swap(v[j], v[j + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
}

void merge_rec(Vec& v, Vec& tmp, std::size_t lo, std::size_t hi, Counter& c) {
  if (hi - lo < 2) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_rec(v, tmp, lo, mid, c);
  merge_rec(v, tmp, mid, hi, c);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) tmp[k++] = c.before(v[j], v[i]) ? v[j++] : v[i++];
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  for (k = lo; k < hi; ++k) v[k] = tmp[k];
}

void sift_down(Vec& v, std::size_t root, std::size_t size, Counter& c) {
  // min-heap on the prefix so popping to the back yields descending order
  for (;;) {
    std::size_t child = 2 * root + 1;
    if (child >= size) return;
    if (child + 1 < size && c.before(v[child], v[child + 1])) ++child;
    if (!c.before(v[root], v[child])) return;
    std::swap(v[root], v[child]);
    root = child;
  }
}

void heap(Vec& v, Counter& c) {
  const std::size_t n = v.size();
  for (std::size_t i = n / 2; i-- > 0;) sift_down(v, i, n, c);
  for (std::size_t end = n; end > 1; --end) {
    std::swap(v[0], v[end - 1]);
    sift_down(v, 0, end - 1, c);
  }
}

void quick_rec(Vec& v, std::ptrdiff_t lo, std::ptrdiff_t hi, Counter& c) {
  while (lo < hi) {
    const auto pivot = v[static_cast<std::size_t>(lo + (hi - lo) / 2)];
    std::ptrdiff_t i = lo, j = hi;
    while (i <= j) {
      while (c.before(v[static_cast<std::size_t>(i)], pivot)) ++i;
      while (c.before(pivot, v[static_cast<std::size_t>(j)])) --j;
      if (i <= j) std::swap(v[static_cast<std::size_t>(i++)], v[static_cast<std::size_t>(j--)]);
    }
    if (j - lo < hi - i) {
      quick_rec(v, lo, j, c);
      lo = i;
    } else {
      quick_rec(v, i, hi, c);
      hi = j;
    }
  }
}

void radix(Vec& v, Counter& c) {
  // LSD, 8-bit digits, descending by bucketing from the top digit value down.
  Vec tmp(v.size());
  std::uint64_t max = 0;
  for (const auto x : v) max = std::max(max, x);
  for (int shift = 0; shift < 64 && (max >> shift) != 0; shift += 8) {
    ++c.n;
    std::size_t count[257] = {};
    for (const auto x : v) ++count[255 - ((x >> shift) & 0xFF) + 1];
    for (int d = 0; d < 256; ++d) count[d + 1] += count[d];
    for (const auto x : v) tmp[count[255 - ((x >> shift) & 0xFF)]++] = x;
    v.swap(tmp);
  }
}

}  // namespace

BaselineRun run_baseline(Baseline b, std::span<const std::uint64_t> elements) {
  BaselineRun run;
  run.output.assign(elements.begin(), elements.end());
  Counter c;
  auto& v = run.output;
  switch (b) {
    case Baseline::Insertion: insertion(v, c); break;
    case Baseline::Selection: selection(v, c); break;
    case Baseline::Bubble: bubble(v, c); break;
    case Baseline::Merge: {
      Vec tmp(v.size());
      merge_rec(v, tmp, 0, v.size(), c);
      break;
    }
    case Baseline::Heap: heap(v, c); break;
    case Baseline::Quick:
      if (!v.empty()) quick_rec(v, 0, static_cast<std::ptrdiff_t>(v.size()) - 1, c);
      break;
    case Baseline::Radix: radix(v, c); break;
  }
  run.comparisons = c.n;
  return run;
}

}  // namespace cayley::oracle
