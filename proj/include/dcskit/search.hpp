#ifndef DCSKIT_SEARCH_HPP
#define DCSKIT_SEARCH_HPP

#include <cstdint>
#include <vector>

#include "dcskit/system.hpp"

namespace dcs {

enum class EquivalenceMode { raw, translation };

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prune_subset_sum = 0;  // infeasible branches cut while composing size vectors
  std::uint64_t prune_coprime = 0;     // size vectors rejected for a coprime index pair
  std::uint64_t prune_overlap = 0;     // placements rejected by the membership table

  SearchStats& operator+=(const SearchStats& other) {
    nodes += other.nodes;
    prune_subset_sum += other.prune_subset_sum;
    prune_coprime += other.prune_coprime;
    prune_overlap += other.prune_overlap;
    return *this;
  }
};

struct PerNSummary {
  Int n = 0;
  Int count = 0;
  SearchStats stats;
};

struct SearchResult {
  std::vector<DcsSystem> systems;  // canonical forms, sorted, duplicates removed
  std::vector<PerNSummary> per_n;
  SearchStats stats;
  double seconds = 0.0;
  bool complete = true;  // false once the node limit cut the search short
};

struct SearchConfig {
  Int m = 2;
  Int n = 0;      // single-n enumeration when > 0
  Int n_max = 0;  // range sweep otherwise
  EquivalenceMode mode = EquivalenceMode::translation;
  std::uint64_t node_limit = 0;  // 0 = unlimited
  int jobs = 1;                  // <= 0 picks one worker per core
};

// All strictly decreasing vectors of divisors of n, each in (1, n/3],
// summing to n - m: the admissible non-singleton coset sizes of eq-shaped
// partitions.
std::vector<std::vector<Int>> size_multisets(Int n, Int m);

// raw: canonical sort only; translation: lexicographically least among the n
// translates
DcsSystem canonicalize(const DcsSystem& sys, EquivalenceMode mode);

SearchResult enumerate_for_n(const SearchConfig& config);
SearchResult enumerate_range(const SearchConfig& config);

// Brute-force reference engine: exact-cover search with only the membership
// table, shape filtering applied after the fact. Certifies the pruned
// engine; keep n small.
SearchResult naive_enumerate(Int n, Int m, EquivalenceMode mode);

}  // namespace dcs

#endif
