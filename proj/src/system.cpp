#include "dcskit/system.hpp"

#include <algorithm>

namespace dcs {

namespace {

// Full-period scans stay desk-scale; refuse anything that would not.
constexpr Int kMaxScanPeriod = Int{1} << 26;

}  // namespace

DcsSystem::DcsSystem(std::vector<Progression> progressions, Int multiplicity)
    : progressions_(std::move(progressions)), m_(multiplicity) {
  if (progressions_.size() < 2) fail(Errc::invalid_argument, "a system needs t > 1 progressions");
  for (const auto& p : progressions_) {
    if (p.modulus < 1) fail(Errc::invalid_argument, "progression modulus must be positive");
    if (p.residue < 0 || p.residue >= p.modulus)
      fail(Errc::invalid_argument, "progression residue must be reduced mod its modulus");
  }
  if (m_ < 2) fail(Errc::invalid_argument, "multiplicity m must be at least 2");
  if (m_ > t()) fail(Errc::invalid_argument, "multiplicity m cannot exceed t");
  std::sort(progressions_.begin(), progressions_.end());
  n_ = lcm_all(moduli());
}

std::vector<Int> DcsSystem::moduli() const {
  std::vector<Int> out;
  out.reserve(progressions_.size());
  for (const auto& p : progressions_) out.push_back(p.modulus);
  return out;
}

bool system_less(const DcsSystem& a, const DcsSystem& b) {
  if (a.n() != b.n()) return a.n() < b.n();
  if (a.m() != b.m()) return a.m() < b.m();
  return a.progressions() < b.progressions();
}

CoverReport validate_exact_cover(const DcsSystem& sys, bool exhaustive) {
  CoverReport report;
  report.period = sys.n();
  if (report.period > kMaxScanPeriod)
    fail(Errc::overflow, "cover validation period exceeds desk-scale bound");

  std::vector<std::uint8_t> hits(static_cast<std::size_t>(report.period), 0);
  for (const auto& p : sys.progressions()) {
    for (Int x = p.residue; x < report.period; x += p.modulus) {
      auto& h = hits[static_cast<std::size_t>(x)];
      if (h < 255) ++h;
    }
  }

  for (Int r = 0; r < report.period; ++r) {
    std::uint8_t h = hits[static_cast<std::size_t>(r)];
    if (h == 1) continue;
    CoverViolation v;
    v.residue = r;
    if (h == 0) {
      v.kind = CoverKind::under_covered;
    } else {
      v.kind = CoverKind::over_covered;
      const auto& progs = sys.progressions();
      for (int i = 0; i < static_cast<int>(progs.size()); ++i) {
        if (!progs[static_cast<std::size_t>(i)].contains(r)) continue;
        if (v.first < 0) {
          v.first = i;
        } else {
          v.second = i;
          break;
        }
      }
    }
    report.violations.push_back(v);
    if (!exhaustive) break;
  }
  return report;
}

const char* shape_clause_name(ShapeClause clause) {
  switch (clause) {
    case ShapeClause::ok: return "ok";
    case ShapeClause::smaller_modulus_repeated: return "smaller_modulus_repeated";
    case ShapeClause::largest_multiplicity: return "largest_multiplicity";
    case ShapeClause::min_modulus: return "min_modulus";
  }
  return "?";
}

ShapeReport check_shape(const DcsSystem& sys, bool require_min3) {
  ShapeReport report;
  const std::vector<Int> mods = sys.moduli();  // ascending by canonical sort
  const Int t = sys.t();
  const Int m = sys.m();
  const Int largest = mods.back();

  // first t-m moduli strictly increasing
  for (Int i = 0; i + 1 < t - m; ++i) {
    if (mods[static_cast<std::size_t>(i)] >= mods[static_cast<std::size_t>(i + 1)]) {
      report.failed = ShapeClause::smaller_modulus_repeated;
      report.detail = "modulus " + std::to_string(mods[static_cast<std::size_t>(i)]) +
                      " repeats below the largest";
      return report;
    }
  }

  // largest modulus occurs exactly m times (covers both the equality of the
  // last m and the strict separation n_{t-m} < n_{t-m+1})
  Int occurrences = 0;
  for (Int v : mods)
    if (v == largest) ++occurrences;
  if (occurrences != m) {
    report.failed = ShapeClause::largest_multiplicity;
    report.detail = "largest modulus " + std::to_string(largest) + " occurs " +
                    std::to_string(occurrences) + " time(s), multiplicity says " +
                    std::to_string(m);
    return report;
  }

  if (require_min3 && mods.front() < 3) {
    report.failed = ShapeClause::min_modulus;
    report.detail = "smallest modulus " + std::to_string(mods.front()) + " is below 3";
    return report;
  }
  return report;
}

CosetPartition::CosetPartition(Int n, std::vector<Coset> cosets)
    : n_(n), cosets_(std::move(cosets)) {
  if (n_ < 1) fail(Errc::invalid_argument, "partition ambient must be positive");
  Int total = 0;
  for (auto& k : cosets_) {
    if (k.ambient != n_) fail(Errc::invalid_argument, "coset ambient mismatch");
    if (k.index < 1 || n_ % k.index != 0)
      fail(Errc::invalid_argument, "coset index must divide the ambient order");
    if (k.residue < 0 || k.residue >= k.index)
      fail(Errc::invalid_argument, "coset residue must be reduced mod its index");
    total = checked_add(total, k.size());
  }
  if (total != n_) fail(Errc::invalid_argument, "coset sizes must sum to the ambient order");
  for (std::size_t i = 0; i < cosets_.size(); ++i) {
    for (std::size_t j = i + 1; j < cosets_.size(); ++j) {
      Int g = gcd(cosets_[i].index, cosets_[j].index);
      if (mod_floor(cosets_[i].residue - cosets_[j].residue, g) == 0)
        fail(Errc::invalid_argument, "cosets are not pairwise disjoint");
    }
  }
  std::sort(cosets_.begin(), cosets_.end());
}

CosetPartition to_coset_partition(const DcsSystem& sys) {
  if (!validate_exact_cover(sys).exact())
    fail(Errc::invalid_argument, "to_coset_partition requires an exact cover");
  const Int n = sys.n();
  std::vector<Coset> cosets;
  cosets.reserve(sys.progressions().size());
  for (const auto& p : sys.progressions()) {
    if (n % p.modulus != 0)
      fail(Errc::invalid_argument,
           "NonDividingModulus: modulus " + std::to_string(p.modulus) + " does not divide " +
               std::to_string(n));
    cosets.push_back({n, p.modulus, p.residue});
  }
  return CosetPartition(n, std::move(cosets));
}

DcsSystem from_coset_partition(const CosetPartition& partition) {
  std::vector<Progression> progs;
  progs.reserve(partition.cosets().size());
  Int largest_index = 0;
  for (const auto& k : partition.cosets()) largest_index = std::max(largest_index, k.index);
  Int m = 0;
  for (const auto& k : partition.cosets()) {
    progs.push_back({k.residue, k.index});
    if (k.index == largest_index) ++m;
  }
  return DcsSystem(std::move(progs), m);
}

Rational density_sum(const DcsSystem& sys) {
  Rational total(0, 1);
  for (const auto& p : sys.progressions()) total = total + Rational(1, p.modulus);
  return total;
}

}  // namespace dcs
