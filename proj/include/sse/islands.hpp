#pragma once

// Genie-aided merging of reads into true islands. Reads are ordered by their
// true start positions and consecutive reads that overlap are merged; a
// merged position keeps any unerased symbol seen in a covering read.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sse/channel.hpp"

namespace sse {

enum class MergeMode {
  // Successor merges when it starts at or before the end of the island, so
  // islands are exactly the maximal covered runs.
  maximal_run,
  // Successor merges only when it starts strictly inside the predecessor;
  // exactly adjacent reads stay separate islands.
  strict_overlap,
};

inline std::string_view to_string(MergeMode m) {
  return m == MergeMode::maximal_run ? "maximal-run" : "strict-overlap";
}

inline MergeMode parse_merge_mode(std::string_view s) {
  if (s == "maximal-run") return MergeMode::maximal_run;
  if (s == "strict-overlap") return MergeMode::strict_overlap;
  throw ConfigError("unknown merge mode '" + std::string(s) +
                    "' (expected maximal-run or strict-overlap)");
}

struct Island {
  std::size_t start = 0;
  std::size_t length = 0;
  std::vector<Symbol> symbols;
  std::size_t read_count = 0;

  bool operator==(const Island&) const = default;
};

struct IslandSet {
  std::vector<Island> islands;  // sorted by start
  bool full_circle = false;
  std::size_t n = 0;
  std::size_t erased_count = 0;
  // Index into `islands` of the island holding each read, in ReadSet order.
  std::vector<std::size_t> read_island;

  std::size_t covered() const {
    std::size_t s = 0;
    for (const auto& is : islands) s += is.length;
    return s;
  }

  bool operator==(const IslandSet&) const = default;
};

namespace detail {

// Sorts islands by start and rewrites read_island to the new order.
inline void finalize(IslandSet& set) {
  std::vector<std::size_t> order(set.islands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return set.islands[a].start < set.islands[b].start;
  });
  std::vector<std::size_t> rank(order.size());
  std::vector<Island> sorted;
  sorted.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = i;
    sorted.push_back(std::move(set.islands[order[i]]));
  }
  set.islands = std::move(sorted);
  for (auto& r : set.read_island) r = rank[r];

  set.erased_count = 0;
  for (const auto& is : set.islands)
    set.erased_count += static_cast<std::size_t>(
        std::count(is.symbols.begin(), is.symbols.end(), Symbol::erased));
}

}  // namespace detail

// Sort-and-sweep merge, O(K log K + K L).
inline IslandSet merge_true_islands(const ReadSet& rs, MergeMode mode = MergeMode::maximal_run) {
  const std::size_t n = rs.params.n;
  const std::size_t L = rs.params.L;
  const auto& reads = rs.reads;
  const std::size_t K = reads.size();

  IslandSet out;
  out.n = n;
  if (K == 0) return out;
  out.read_island.assign(K, 0);

  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return reads[a].start < reads[b].start; });

  auto gap_after = [&](std::size_t i) {
    const std::size_t here = reads[order[i]].start;
    return i + 1 < K ? reads[order[i + 1]].start - here : reads[order[0]].start + n - here;
  };
  auto splits = [&](std::size_t gap) {
    return mode == MergeMode::maximal_run ? gap > L : gap >= L;
  };

  std::vector<std::size_t> breaks;  // sorted positions i with a split after order[i]
  for (std::size_t i = 0; i < K; ++i)
    if (splits(gap_after(i))) breaks.push_back(i);

  auto paint = [&](Island& is, std::size_t r) {
    const std::size_t offset = (reads[r].start + n - is.start) % n;
    const auto& sym = reads[r].symbols;
    for (std::size_t j = 0; j < L; ++j)
      if (sym[j] != Symbol::erased) is.symbols[(offset + j) % is.length] = sym[j];
  };

  if (breaks.empty()) {
    Island is;
    is.start = 0;
    is.length = n;
    is.symbols.assign(n, Symbol::erased);
    is.read_count = K;
    for (std::size_t r = 0; r < K; ++r) paint(is, r);
    out.islands.push_back(std::move(is));
    out.full_circle = true;
    detail::finalize(out);
    return out;
  }

  for (std::size_t b = 0; b < breaks.size(); ++b) {
    const std::size_t first = (breaks[b == 0 ? breaks.size() - 1 : b - 1] + 1) % K;
    const std::size_t last = breaks[b];
    const std::size_t count = (last + K - first) % K + 1;

    Island is;
    is.start = reads[order[first]].start;
    is.length = (reads[order[last]].start + n - is.start) % n + L;
    is.symbols.assign(is.length, Symbol::erased);
    is.read_count = count;
    const std::size_t index = out.islands.size();
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t r = order[(first + k) % K];
      out.read_island[r] = index;
      paint(is, r);
    }
    out.islands.push_back(std::move(is));
  }
  // A single strict-mode island can close on itself when its only gap is exactly L.
  out.full_circle = out.islands.size() == 1 && out.islands.front().length == n;
  detail::finalize(out);
  return out;
}

// Oracle: paints every read onto a position mask and reads off the maximal
// cyclic runs. O(n + K L); intended for n up to ~1e4.
inline IslandSet brute_force_islands(const ReadSet& rs) {
  const std::size_t n = rs.params.n;
  const std::size_t L = rs.params.L;
  IslandSet out;
  out.n = n;
  if (rs.reads.empty()) return out;

  std::vector<bool> covered(n, false);
  std::vector<Symbol> value(n, Symbol::erased);
  for (const auto& r : rs.reads) {
    for (std::size_t j = 0; j < L; ++j) {
      const std::size_t p = (r.start + j) % n;
      covered[p] = true;
      if (r.symbols[j] != Symbol::erased) value[p] = r.symbols[j];
    }
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> run_of(n, none);
  const auto uncovered = std::find(covered.begin(), covered.end(), false);
  if (uncovered == covered.end()) {
    out.full_circle = true;
    out.islands.push_back(Island{0, n, value, 0});
    std::fill(run_of.begin(), run_of.end(), 0);
  } else {
    const auto u = static_cast<std::size_t>(uncovered - covered.begin());
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t p = (u + k) % n;
      if (!covered[p]) continue;
      const std::size_t prev = (p + n - 1) % n;
      if (!covered[prev]) out.islands.push_back(Island{p, 0, {}, 0});
      Island& is = out.islands.back();
      ++is.length;
      is.symbols.push_back(value[p]);
      run_of[p] = out.islands.size() - 1;
    }
  }

  out.read_island.reserve(rs.reads.size());
  for (const auto& r : rs.reads) {
    const std::size_t idx = run_of[r.start];
    ++out.islands[idx].read_count;
    out.read_island.push_back(idx);
  }
  detail::finalize(out);
  return out;
}

inline std::vector<std::size_t> island_lengths(const IslandSet& set) {
  std::vector<std::size_t> lengths;
  lengths.reserve(set.islands.size());
  for (const auto& is : set.islands) lengths.push_back(is.length);
  return lengths;
}

}  // namespace sse
