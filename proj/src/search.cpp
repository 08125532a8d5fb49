#include "dcskit/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <exception>
#include <mutex>
#include <thread>

namespace dcs {

namespace {

struct Bitset {
  std::vector<std::uint64_t> words;
  Int bits;

  explicit Bitset(Int n) : words(static_cast<std::size_t>((n + 63) / 64), 0), bits(n) {
    // mark the tail beyond `bits` as covered so first_zero saturates at n
    for (Int i = n; i < static_cast<Int>(words.size()) * 64; ++i)
      words[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63);
  }
  bool test(Int i) const { return words[static_cast<std::size_t>(i >> 6)] >> (i & 63) & 1; }
  void set(Int i) { words[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63); }
  void reset(Int i) { words[static_cast<std::size_t>(i >> 6)] &= ~(1ULL << (i & 63)); }
  Int first_zero() const {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t inv = ~words[w];
      if (inv) return static_cast<Int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(inv)));
    }
    return bits;
  }
};

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// runs fn(0..count-1) across `jobs` workers; fn may only touch its own slot
template <class Fn>
void run_parallel(int jobs, std::size_t count, Fn fn) {
  jobs = effective_jobs(jobs);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min<int>(jobs, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int j = 0; j < spawn; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::vector<Int>> size_multisets_counted(Int n, Int m, SearchStats& stats) {
  std::vector<std::vector<Int>> out;
  if (n < 2 || m < 2) return out;

  std::vector<Int> candidates;
  for (Int d : divisors(n))
    if (d > 1 && 3 * d <= n) candidates.push_back(d);
  std::sort(candidates.rbegin(), candidates.rend());

  std::vector<Int> suffix(candidates.size() + 1, 0);
  for (std::size_t i = candidates.size(); i-- > 0;)
    suffix[i] = suffix[i + 1] + candidates[i];

  // divisor-rich periods can spawn combinatorially many vectors; refuse
  // before memory does (desk-scale sweeps stay in the low thousands)
  constexpr std::size_t kMaxVectors = 1 << 20;

  std::vector<Int> current;
  auto rec = [&](auto&& self, std::size_t i, Int target) -> void {
    if (target == 0) {
      if (!current.empty()) {
        if (out.size() >= kMaxVectors)
          fail(Errc::overflow, "size-vector family for n = " + std::to_string(n) + " is too large");
        out.push_back(current);
      }
      return;
    }
    if (i == candidates.size()) return;
    if (suffix[i] < target) {
      ++stats.prune_subset_sum;
      return;
    }
    if (candidates[i] <= target) {
      current.push_back(candidates[i]);
      self(self, i + 1, target - candidates[i]);
      current.pop_back();
    }
    self(self, i + 1, target);
  };
  rec(rec, 0, n - m);
  return out;
}

// two cosets with coprime indices always intersect, so such a size vector
// can never be realized
bool passes_coprime_filter(Int n, const std::vector<Int>& sizes, SearchStats& stats) {
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::size_t j = i + 1; j < sizes.size(); ++j) {
      if (gcd(n / sizes[i], n / sizes[j]) == 1) {
        ++stats.prune_coprime;
        return false;
      }
    }
  }
  return true;
}

struct NodeBudget {
  std::atomic<std::uint64_t>* total = nullptr;
  std::uint64_t limit = 0;  // 0 = unlimited
  std::uint64_t window = 1024;
  std::uint64_t local = 0;
  bool exhausted = false;

  void arm() {
    if (limit > 0) window = std::max<std::uint64_t>(1, std::min<std::uint64_t>(1024, limit));
  }
  bool tick() {
    if (limit == 0) return true;
    if (exhausted) return false;
    if (++local >= window) {
      exhausted = total->fetch_add(local) + local > limit;
      local = 0;
    }
    return !exhausted;
  }
  void flush() {
    if (total && local) {
      total->fetch_add(local);
      local = 0;
    }
  }
};

// Precomputed coset bitmasks for one ambient n: mask(q, a) marks the
// members of the index-q coset through residue a. Shared read-only across
// the per-vector searches of that n. The table holds sigma(n) masks of
// n/64 words each, so it is only built for small n; larger periods fall
// back to strided bit walks.
constexpr Int kMaskTableMaxN = 4096;

struct CosetMasks {
  Int n = 0;
  std::size_t words = 0;
  std::vector<Int> index_of;                    // divisor -> slot, -1 otherwise
  std::vector<std::vector<std::uint64_t>> table;  // slot -> q * words packed masks

  explicit CosetMasks(Int ambient) : n(ambient), words(static_cast<std::size_t>((ambient + 63) / 64)) {
    if (n > kMaskTableMaxN) return;
    index_of.assign(static_cast<std::size_t>(n + 1), -1);
    for (Int q : divisors(n)) {
      if (q == 1) continue;
      index_of[static_cast<std::size_t>(q)] = static_cast<Int>(table.size());
      std::vector<std::uint64_t> masks(static_cast<std::size_t>(q) * words, 0);
      for (Int a = 0; a < q; ++a) {
        std::uint64_t* mask = masks.data() + static_cast<std::size_t>(a) * words;
        for (Int x = a; x < n; x += q) mask[x >> 6] |= 1ULL << (x & 63);
      }
      table.push_back(std::move(masks));
    }
  }

  bool active() const { return !table.empty(); }
  const std::uint64_t* mask(Int q, Int a) const {
    return table[static_cast<std::size_t>(index_of[static_cast<std::size_t>(q)])].data() +
           static_cast<std::size_t>(a) * words;
  }
};

// depth-first placement over one size vector: cover the least uncovered
// residue with an unused size or spend a singleton on it
struct VectorDfs {
  Int n = 0;
  Int m = 0;
  std::vector<Int> sizes;    // descending
  std::vector<Int> indices;  // n / size
  EquivalenceMode mode = EquivalenceMode::raw;
  const CosetMasks* masks = nullptr;

  SearchStats stats;
  bool complete = true;
  NodeBudget budget;

  Bitset covered{1};
  std::size_t words = 0;
  std::uint32_t used = 0;
  Int singles_left = 0;
  std::vector<Int> singleton_residues;
  std::vector<std::pair<Int, Int>> placed;  // (residue, index)
  std::vector<DcsSystem> found;

  void run() {
    covered = Bitset(n);
    words = covered.words.size();
    indices.clear();
    for (Int c : sizes) indices.push_back(n / c);
    singles_left = m;
    budget.arm();
    dfs();
    budget.flush();
  }

  bool coset_fits(std::size_t i, Int r) const {
    const Int q = indices[i];
    const Int a = r % q;
    if (masks->active()) {
      const std::uint64_t* mask = masks->mask(q, a);
      const std::uint64_t* cover = covered.words.data();
      std::uint64_t clash = 0;
      for (std::size_t w = 0; w < words; ++w) clash |= cover[w] & mask[w];
      return clash == 0;
    }
    for (Int x = a; x < n; x += q)
      if (covered.test(x)) return false;
    return true;
  }

  void flip_coset(std::size_t i, Int r) {
    const Int q = indices[i];
    const Int a = r % q;
    if (masks->active()) {
      const std::uint64_t* mask = masks->mask(q, a);
      std::uint64_t* cover = covered.words.data();
      for (std::size_t w = 0; w < words; ++w) cover[w] ^= mask[w];
      return;
    }
    for (Int x = a; x < n; x += q)
      covered.words[static_cast<std::size_t>(x >> 6)] ^= 1ULL << (x & 63);
  }

  // Fail-first branch point: the uncovered residue with the fewest viable
  // covers (ties to the least residue). Every completion covers each
  // residue exactly once, so branching on any fixed residue is complete.
  // Returns the residue and the set of sizes that fit there; -1 when some
  // residue has no cover at all.
  Int pick_residue(std::uint32_t& viable_out) const {
    Int best_r = -1;
    std::uint32_t best_viable = 0;
    int best_options = INT_MAX;
    const int floor_options = singles_left > 0 ? 1 : 0;
    for (Int r = covered.first_zero(); r < n; ++r) {
      if (covered.test(r)) continue;
      int options = floor_options;
      std::uint32_t viable = 0;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (used >> i & 1) continue;
        if (coset_fits(i, r)) {
          ++options;
          viable |= 1U << i;
          if (options >= best_options) break;
        }
      }
      if (options < best_options) {
        best_options = options;
        best_r = r;
        best_viable = viable;
        if (best_options <= floor_options) break;  // cannot improve
      }
    }
    viable_out = best_viable;
    return best_options == 0 ? Int{-1} : best_r;
  }

  void dfs() {
    if (covered.first_zero() == n) {
      emit();
      return;
    }
    ++stats.nodes;
    if (!budget.tick()) {
      complete = false;
      return;
    }
    std::uint32_t viable = 0;
    const Int r = pick_residue(viable);
    if (r < 0) {
      ++stats.prune_overlap;  // some residue lost its last viable cover
      return;
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (used >> i & 1) continue;
      if (!(viable >> i & 1)) {
        ++stats.prune_overlap;
        continue;
      }
      flip_coset(i, r);
      used |= 1U << i;
      placed.emplace_back(r % indices[i], indices[i]);
      dfs();
      placed.pop_back();
      used &= ~(1U << i);
      flip_coset(i, r);
      if (!complete) return;
    }
    if (singles_left > 0) {
      --singles_left;
      covered.set(r);
      singleton_residues.push_back(r);
      dfs();
      singleton_residues.pop_back();
      covered.reset(r);
      ++singles_left;
    }
  }

  void emit() {
    std::vector<Progression> progs;
    progs.reserve(placed.size() + singleton_residues.size());
    for (auto [a, q] : placed) progs.push_back({a, q});
    for (Int r : singleton_residues) progs.push_back({r, n});
    found.push_back(canonicalize(DcsSystem(std::move(progs), m), mode));
  }
};

void sort_unique(std::vector<DcsSystem>& systems) {
  std::sort(systems.begin(), systems.end(), system_less);
  systems.erase(std::unique(systems.begin(), systems.end()), systems.end());
}

struct SingleNResult {
  std::vector<DcsSystem> systems;
  SearchStats stats;
  bool complete = true;
};

SingleNResult enumerate_single(Int n, Int m, EquivalenceMode mode,
                               std::atomic<std::uint64_t>* node_total, std::uint64_t node_limit,
                               int jobs) {
  SingleNResult result;
  auto vectors = size_multisets_counted(n, m, result.stats);
  std::erase_if(vectors, [&](const std::vector<Int>& v) {
    return !passes_coprime_filter(n, v, result.stats);
  });
  if (vectors.empty()) return result;

  const CosetMasks masks(n);
  std::vector<VectorDfs> runs(vectors.size());
  run_parallel(jobs, vectors.size(), [&](std::size_t i) {
    VectorDfs& run = runs[i];
    run.n = n;
    run.m = m;
    run.sizes = vectors[i];
    run.mode = mode;
    run.masks = &masks;
    run.budget.total = node_total;
    run.budget.limit = node_limit;
    run.run();
  });

  for (auto& run : runs) {
    result.stats += run.stats;
    result.complete = result.complete && run.complete;
    for (auto& sys : run.found) result.systems.push_back(std::move(sys));
  }
  sort_unique(result.systems);
  return result;
}

void validate_config(const SearchConfig& config) {
  if (config.m < 2) fail(Errc::invalid_argument, "search requires multiplicity m >= 2");
}

constexpr Int kMaxSearchPeriod = Int{1} << 22;

void validate_period(Int n) {
  if (n > kMaxSearchPeriod) fail(Errc::overflow, "enumeration period exceeds desk-scale bound");
}

}  // namespace

std::vector<std::vector<Int>> size_multisets(Int n, Int m) {
  SearchStats scratch;
  return size_multisets_counted(n, m, scratch);
}

DcsSystem canonicalize(const DcsSystem& sys, EquivalenceMode mode) {
  if (mode == EquivalenceMode::raw) return sys;
  const Int n = sys.n();
  std::vector<Progression> best;
  std::vector<Progression> shifted(sys.progressions().size());
  for (Int c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      const auto& p = sys.progressions()[i];
      shifted[i] = {mod_floor(p.residue + c, p.modulus), p.modulus};
    }
    std::sort(shifted.begin(), shifted.end());
    if (best.empty() || shifted < best) best = shifted;
  }
  return DcsSystem(std::move(best), sys.m());
}

SearchResult enumerate_for_n(const SearchConfig& config) {
  validate_config(config);
  if (config.n < 2) fail(Errc::invalid_argument, "enumerate_for_n requires n >= 2");
  validate_period(config.n);
  const auto start = std::chrono::steady_clock::now();

  SearchResult result;
  std::atomic<std::uint64_t> node_total{0};
  SingleNResult single = enumerate_single(config.n, config.m, config.mode, &node_total,
                                          config.node_limit, config.jobs);
  result.systems = std::move(single.systems);
  result.stats = single.stats;
  result.complete = single.complete;
  result.per_n.push_back({config.n, static_cast<Int>(result.systems.size()), single.stats});
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SearchResult enumerate_range(const SearchConfig& config) {
  validate_config(config);
  if (config.n_max < 2) fail(Errc::invalid_argument, "enumerate_range requires n_max >= 2");
  validate_period(config.n_max);
  const auto start = std::chrono::steady_clock::now();

  // Sweep every n from 2: the m singletons force the largest modulus (and the
  // lcm) to equal n, so each work item stands alone.
  std::vector<Int> ns;
  for (Int n = 2; n <= config.n_max; ++n) ns.push_back(n);

  std::vector<SingleNResult> slots(ns.size());
  std::atomic<std::uint64_t> node_total{0};
  run_parallel(config.jobs, ns.size(), [&](std::size_t i) {
    slots[i] = enumerate_single(ns[i], config.m, config.mode, &node_total, config.node_limit, 1);
  });

  SearchResult result;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto& slot = slots[i];
    result.stats += slot.stats;
    result.complete = result.complete && slot.complete;
    result.per_n.push_back({ns[i], static_cast<Int>(slot.systems.size()), slot.stats});
    for (auto& sys : slot.systems) result.systems.push_back(std::move(sys));
  }
  // per-n blocks are already sorted and distinct n never collide
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SearchResult naive_enumerate(Int n, Int m, EquivalenceMode mode) {
  if (n < 2) fail(Errc::invalid_argument, "naive_enumerate requires n >= 2");
  if (m < 2) fail(Errc::invalid_argument, "naive_enumerate requires m >= 2");
  validate_period(n);
  const auto start = std::chrono::steady_clock::now();

  std::vector<Int> qs;  // coset indices to try, the whole-group index excluded
  for (Int q : divisors(n))
    if (q > 1) qs.push_back(q);

  // Two facts about the target family bound the tree: at most m singletons
  // and no repeated non-singleton size. Everything else (the n/3 cap, the
  // exact singleton count, nontriviality) is filtered after the fact.
  SearchResult result;
  Bitset covered(n);
  std::vector<std::pair<Int, Int>> placed;  // (residue, index)
  std::vector<char> index_used(qs.size(), 0);
  Int singles = 0;

  auto record = [&] {
    Int largest_size = 0;
    bool any_nonsingleton = false;
    for (auto [a, q] : placed) {
      if (q == n) continue;
      any_nonsingleton = true;
      largest_size = std::max(largest_size, n / q);
    }
    if (singles != m) return;
    if (!any_nonsingleton) return;
    if (3 * largest_size > n) return;
    std::vector<Progression> progs;
    progs.reserve(placed.size());
    for (auto [a, q] : placed) progs.push_back({a, q});
    result.systems.push_back(canonicalize(DcsSystem(std::move(progs), m), mode));
  };

  auto dfs = [&](auto&& self) -> void {
    Int r = covered.first_zero();
    if (r == n) {
      record();
      return;
    }
    ++result.stats.nodes;
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const Int q = qs[qi];
      if (q == n) {
        if (singles == m) continue;  // singleton budget spent
      } else if (index_used[qi]) {
        continue;  // each non-singleton size appears once
      }
      const Int a = r % q;
      bool clash = false;
      for (Int x = a; x < n; x += q) {
        if (covered.test(x)) {
          clash = true;
          break;
        }
      }
      if (clash) {
        ++result.stats.prune_overlap;
        continue;
      }
      for (Int x = a; x < n; x += q) covered.set(x);
      placed.emplace_back(a, q);
      if (q == n)
        ++singles;
      else
        index_used[qi] = 1;
      self(self);
      if (q == n)
        --singles;
      else
        index_used[qi] = 0;
      placed.pop_back();
      for (Int x = a; x < n; x += q) covered.reset(x);
    }
  };
  dfs(dfs);

  sort_unique(result.systems);
  result.per_n.push_back({n, static_cast<Int>(result.systems.size()), result.stats});
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace dcs
