#ifndef DCSKIT_NORMALIZE_HPP
#define DCSKIT_NORMALIZE_HPP

#include "dcskit/system.hpp"

namespace dcs {

// Removes the modulus-2 progression c + 2Z and halves everything else:
// a + dZ maps to (a - c - 1)/2 mod d/2. Requires an exact cover whose
// smallest modulus is 2 with all moduli even; rejects the trivial system,
// whose drop would collapse to a single progression.
DcsSystem two_drop(const DcsSystem& sys);

// Adjoins 0 + 2Z and doubles: a + dZ maps to (2a + 1) + 2dZ. Exact by
// construction; two_drop(two_add(S)) == S.
DcsSystem two_add(const DcsSystem& sys);

struct NormalizeResult {
  DcsSystem system;
  int drops = 0;
};

// Iterates two_drop until the smallest modulus is >= 3 or the trivial system
// (2Z, 2Z+1) is reached.
NormalizeResult normalize_full(const DcsSystem& sys);

}  // namespace dcs

#endif
