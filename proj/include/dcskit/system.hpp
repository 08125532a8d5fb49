#ifndef DCSKIT_SYSTEM_HPP
#define DCSKIT_SYSTEM_HPP

#include <compare>
#include <string>
#include <vector>

#include "dcskit/arith.hpp"

namespace dcs {

// One arithmetic progression a + dZ with the residue reduced mod d.
struct Progression {
  Int residue = 0;
  Int modulus = 1;

  bool contains(Int x) const { return mod_floor(x - residue, modulus) == 0; }

  // canonical order: by modulus, then residue
  friend std::strong_ordering operator<=>(const Progression& a, const Progression& b) {
    if (auto c = a.modulus <=> b.modulus; c != 0) return c;
    return a.residue <=> b.residue;
  }
  friend bool operator==(const Progression&, const Progression&) = default;
};

// Ordered family of progressions plus the multiplicity m of the largest
// modulus. Construction sorts canonically and derives n = lcm of moduli.
class DcsSystem {
 public:
  DcsSystem(std::vector<Progression> progressions, Int multiplicity);

  const std::vector<Progression>& progressions() const { return progressions_; }
  Int m() const { return m_; }
  Int t() const { return static_cast<Int>(progressions_.size()); }
  Int n() const { return n_; }

  std::vector<Int> moduli() const;

  friend bool operator==(const DcsSystem& a, const DcsSystem& b) {
    return a.m_ == b.m_ && a.progressions_ == b.progressions_;
  }

 private:
  std::vector<Progression> progressions_;
  Int m_ = 0;
  Int n_ = 1;
};

// ordering used for deterministic result sets: (n, m, progression list)
bool system_less(const DcsSystem& a, const DcsSystem& b);

enum class CoverKind { under_covered, over_covered };

struct CoverViolation {
  CoverKind kind = CoverKind::under_covered;
  Int residue = 0;
  // for over_covered: indices of two progressions both containing `residue`
  int first = -1;
  int second = -1;
};

struct CoverReport {
  Int period = 1;  // lcm scanned
  std::vector<CoverViolation> violations;
  bool exact() const { return violations.empty(); }
};

// Scans one full period [0, lcm) with a membership count table. Reports the
// first violation in residue order, or all of them when `exhaustive` is set.
CoverReport validate_exact_cover(const DcsSystem& sys, bool exhaustive = false);

enum class ShapeClause {
  ok,
  smaller_modulus_repeated,     // the first t-m moduli are not strictly increasing
  largest_multiplicity,         // the largest modulus does not occur exactly m times
  min_modulus,                  // smallest modulus below 3 with require_min3
};

struct ShapeReport {
  ShapeClause failed = ShapeClause::ok;
  std::string detail;
  bool ok() const { return failed == ShapeClause::ok; }
};

const char* shape_clause_name(ShapeClause clause);

ShapeReport check_shape(const DcsSystem& sys, bool require_min3);

// Coset a + index * Z_n inside Z_n; index divides n, residue reduced mod index.
struct Coset {
  Int ambient = 1;
  Int index = 1;
  Int residue = 0;

  Int size() const { return ambient / index; }
  bool contains(Int x) const { return mod_floor(x - residue, index) == 0; }

  // canonical order: descending size (= ascending index), then residue
  friend std::strong_ordering operator<=>(const Coset& a, const Coset& b) {
    if (auto c = a.index <=> b.index; c != 0) return c;
    return a.residue <=> b.residue;
  }
  friend bool operator==(const Coset&, const Coset&) = default;
};

// Partition of Z_n into cosets: pairwise disjoint with sizes summing to n.
class CosetPartition {
 public:
  CosetPartition(Int n, std::vector<Coset> cosets);

  Int n() const { return n_; }
  const std::vector<Coset>& cosets() const { return cosets_; }
  Int t() const { return static_cast<Int>(cosets_.size()); }

 private:
  Int n_ = 1;
  std::vector<Coset> cosets_;
};

// Requires an exact cover; every modulus must divide the lcm (checked).
CosetPartition to_coset_partition(const DcsSystem& sys);

// Inverse of to_coset_partition; m is derived as the multiplicity of the
// largest index.
DcsSystem from_coset_partition(const CosetPartition& partition);

// sum of 1/n_i as an exact rational (equals 1 for exact covers)
Rational density_sum(const DcsSystem& sys);

}  // namespace dcs

#endif
