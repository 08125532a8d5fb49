#include "dcskit/normalize.hpp"

#include <algorithm>

namespace dcs {

DcsSystem two_drop(const DcsSystem& sys) {
  const auto& progs = sys.progressions();
  if (progs.front().modulus != 2)
    fail(Errc::invalid_argument, "NoModulusTwo: smallest modulus is not 2");
  for (const auto& p : progs) {
    if (p.modulus % 2 != 0)
      fail(Errc::invalid_argument,
           "OddModulusPresent: modulus " + std::to_string(p.modulus) + " is odd");
  }
  if (std::all_of(progs.begin(), progs.end(), [](const Progression& p) { return p.modulus == 2; }))
    fail(Errc::invalid_argument, "two_drop on the trivial system would leave a single progression");
  if (progs.size() > 1 && progs[1].modulus == 2)
    fail(Errc::invalid_argument,
         "two modulus-2 progressions cover everything; input is not a disjoint cover");

  const Int c = progs.front().residue;
  std::vector<Progression> mapped;
  mapped.reserve(progs.size() - 1);
  for (std::size_t i = 1; i < progs.size(); ++i) {
    const auto& p = progs[i];
    if (mod_floor(p.residue - c - 1, 2) != 0)
      fail(Errc::invalid_argument,
           "progression " + std::to_string(p.residue) + " mod " + std::to_string(p.modulus) +
               " meets the dropped modulus-2 progression; input is not a disjoint cover");
    Int half_mod = p.modulus / 2;
    mapped.push_back({mod_floor((p.residue - c - 1) / 2, half_mod), half_mod});
  }
  return DcsSystem(std::move(mapped), sys.m());
}

DcsSystem two_add(const DcsSystem& sys) {
  std::vector<Progression> out;
  out.reserve(sys.progressions().size() + 1);
  out.push_back({0, 2});
  for (const auto& p : sys.progressions())
    out.push_back({checked_add(checked_mul(2, p.residue), 1), checked_mul(2, p.modulus)});
  return DcsSystem(std::move(out), sys.m());
}

NormalizeResult normalize_full(const DcsSystem& sys) {
  if (!validate_exact_cover(sys).exact())
    fail(Errc::invalid_argument, "normalize_full requires an exact cover");
  NormalizeResult result{sys, 0};
  // terminates: each drop halves every modulus
  while (true) {
    const auto& progs = result.system.progressions();
    if (progs.front().modulus >= 3) break;
    bool trivial = std::all_of(progs.begin(), progs.end(),
                               [&](const Progression& p) { return p.modulus == progs.front().modulus; });
    if (trivial) break;
    result.system = two_drop(result.system);
    ++result.drops;
  }
  return result;
}

}  // namespace dcs
