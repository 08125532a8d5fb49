#ifndef DCSKIT_TESTS_HELPERS_HPP
#define DCSKIT_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "dcskit/system.hpp"

namespace dcs::testing {

// The doubling family (0 mod 2, 1 mod 4, ..., 2^{t-2}-1 mod 2^{t-1},
// 2^{t-1}-1 mod 2^{t-1}) with multiplicity 2.
inline DcsSystem doubling_family(int t) {
  std::vector<Progression> progs;
  Int modulus = 2;
  Int residue = 0;
  for (int i = 0; i + 1 < t; ++i) {
    progs.push_back({residue, modulus});
    residue = modulus - 1;
    modulus *= 2;
  }
  progs.push_back({residue, modulus / 2});
  return DcsSystem(std::move(progs), 2);
}

// (0 mod 2, 1 mod 2)
inline DcsSystem trivial_system() {
  return DcsSystem({{0, 2}, {1, 2}}, 2);
}

// The m = 4 partition of period 6: 0 mod 3 plus the four residues
// 1, 2, 4, 5 mod 6.
inline DcsSystem period6_m4_system() {
  return DcsSystem({{0, 3}, {1, 6}, {2, 6}, {4, 6}, {5, 6}}, 4);
}

// Random exact cover built by repeatedly splitting a progression a + dZ into
// its p children a + (i*d) + pdZ. Every intermediate family is an exact
// disjoint cover, and the largest modulus always repeats.
inline DcsSystem random_split_system(std::uint64_t seed, Int modulus_cap = 400) {
  std::mt19937_64 rng(seed);
  std::vector<Progression> progs{{0, 1}};
  const Int primes[3] = {2, 3, 5};
  std::uniform_int_distribution<int> prime_pick(0, 2);
  std::uniform_int_distribution<int> extra_splits(1, 4);

  int splits = 1 + extra_splits(rng);
  for (int s = 0; s < splits; ++s) {
    std::uniform_int_distribution<std::size_t> slot(0, progs.size() - 1);
    std::size_t i = slot(rng);
    Int p = primes[prime_pick(rng)];
    if (progs[i].modulus * p > modulus_cap) {
      --s;  // try another slot; small moduli always remain
      if (progs[i].modulus * 2 > modulus_cap) break;
      continue;
    }
    Progression parent = progs[i];
    progs.erase(progs.begin() + static_cast<std::ptrdiff_t>(i));
    for (Int j = 0; j < p; ++j)
      progs.push_back({parent.residue + j * parent.modulus, parent.modulus * p});
  }

  Int largest = 0;
  for (const auto& p : progs) largest = std::max(largest, p.modulus);
  Int m = 0;
  for (const auto& p : progs)
    if (p.modulus == largest) ++m;
  return DcsSystem(std::move(progs), m);
}

}  // namespace dcs::testing

#endif
