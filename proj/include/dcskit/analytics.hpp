#ifndef DCSKIT_ANALYTICS_HPP
#define DCSKIT_ANALYTICS_HPP

#include <optional>
#include <vector>

#include "dcskit/parallelotope.hpp"
#include "dcskit/system.hpp"

namespace dcs {

struct PrimeProfile {
  Int p1 = 0;                 // smallest prime divisor
  std::optional<Int> p2;      // second smallest, absent for prime powers
  int e1 = 0;                 // exponent of p1
};

PrimeProfile prime_profile(Int m);

// Coset form of the base cell inequality: the total size of cosets whose
// size divides |K| is at least p_1(n/|K|) * |K|. Requires |K| < n.
InequalityReport coset_base_inequality(const CosetPartition& partition, int k_index);

// Two-level variant with divisor bound |K| * p_1^{e_1} and threshold
// p_2(n/|K|); not applicable when n/|K| is a prime power.
std::optional<InequalityReport> coset_two_level_inequality(const CosetPartition& partition,
                                                           int k_index);

// product of p_j^{nu(p_j, |K|)} over the primes of n above level h; 1 at h = l
Int pi_h(const Coset& k, int h, const Factorization& n_primes);

// indices of the cosets K' != K with |K'| dividing |K|
std::vector<int> divisor_set(const CosetPartition& partition, int k_index);

struct ClassReport {
  int h = 0;
  Int q = 1;
  std::vector<int> members;      // cosets with pi_h(K) = Q
  std::optional<int> d_h;        // max nu(p_h, |K|) over members; absent when empty
  Int size_sum = 0;
};

// Q must be supported on the primes of n above level h.
ClassReport level_class(const CosetPartition& partition, int h, Int q);

// all values of pi_h realized by the partition, ascending
std::vector<Int> realized_level_values(const CosetPartition& partition, int h);

// no other coset in the subfamily has size dividing |K|
bool is_division_minimal(const CosetPartition& partition, const std::vector<int>& subfamily,
                         int k_index);

// N - sigma(N / p_l) where p_l is the largest prime divisor of N
Int divisor_sum_gap(Int n);

// Exact density of the integers missed by a pairwise disjoint family,
// computed over one period.
Rational uncovered_density(const std::vector<Progression>& progressions);

// Largest prime p* with m * prod_{p < p*} p/(p-1) >= p*, evaluated as an
// exact rational product; absent when no prime satisfies it (m = 1).
std::optional<Int> simpson_prime_bound(Int m);

}  // namespace dcs

#endif
