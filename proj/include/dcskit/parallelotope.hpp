#ifndef DCSKIT_PARALLELOTOPE_HPP
#define DCSKIT_PARALLELOTOPE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dcskit/system.hpp"

namespace dcs {

// Discrete box prod [0, b_i); every side at least 2. Coordinates are
// 0-indexed here; masks use bit i for coordinate i.
class Box {
 public:
  explicit Box(std::vector<Int> sides);

  int dim() const { return static_cast<int>(sides_.size()); }
  const std::vector<Int>& sides() const { return sides_; }
  Int side(int i) const { return sides_[static_cast<std::size_t>(i)]; }
  Int volume() const { return volume_; }
  std::uint64_t full_mask() const { return dim() == 64 ? ~0ULL : (1ULL << dim()) - 1; }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Int> sides_;
  Int volume_ = 1;
};

// sides = p_1 repeated s_1 times, p_2 repeated s_2 times, ... for
// n = prod p_j^{s_j} with primes ascending
Box box_of(Int n);

using Point = std::vector<Int>;

// For each prime block, the coordinates are the base-p digits of k mod p^s,
// most significant digit first.
Point phi(Int n, Int k);
Int phi_inv(Int n, const Point& point);

// Sub-box fixing the coordinates outside free_mask; coordinates of the base
// point at free positions are normalized to 0.
struct Cell {
  Point base;
  std::uint64_t free_mask = 0;

  Int size(const Box& box) const;
  bool contains(const Box& box, const Point& p) const;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend bool operator<(const Cell& a, const Cell& b) {
    if (a.free_mask != b.free_mask) return a.free_mask < b.free_mask;
    return a.base < b.base;
  }
};

Cell make_cell(const Box& box, Point base, std::uint64_t free_mask);

class CellPartition {
 public:
  CellPartition(Box box, std::vector<Cell> cells);

  const Box& box() const { return box_; }
  const std::vector<Cell>& cells() const { return cells_; }
  int t() const { return static_cast<int>(cells_.size()); }

 private:
  Box box_;
  std::vector<Cell> cells_;
};

enum class CellCoverKind { exact, overlap, gap };

struct CellCoverReport {
  CellCoverKind kind = CellCoverKind::exact;
  Point witness;       // a point covered twice / not at all
  int first = -1;      // overlapping cell indices
  int second = -1;
  bool exact() const { return kind == CellCoverKind::exact; }
};

// full scan of the box
CellCoverReport validate_cell_partition(const CellPartition& partition);

// Image of a coset under phi: the free set takes, in each prime block j, the
// first r_j positions of the block, where |K| = prod p_j^{r_j}.
Cell coset_to_cell(const Coset& k);

// Inverts coset_to_cell; nullopt when the free set is not a union of
// per-prime-block prefixes (not a coset cell).
std::optional<Coset> cell_to_coset(Int n, const Cell& cell);

// ind(phi(k2)) subset of ind(phi(k)), cross-checked against |K2| dividing
// |K|; a mismatch between the two computations is an internal error.
bool index_divisibility(const Coset& k, const Coset& k2);

struct InequalityReport {
  Int lhs = 0;        // sum of |X_j| over cells with ind(X_j) in ind(X) u S
  Int threshold = 0;  // minimum side length over the untouched coordinates R
  Int target = 0;     // |X|
  bool holds = false; // lhs >= threshold * target
  std::vector<int> contributing;
};

// The generalized cell inequality: S must avoid ind(X) and leave
// R = [d] \ (ind(X) u S) nonempty. Valid on non-exact partitions too, where
// holds may come back false.
InequalityReport general_inequality(const CellPartition& partition, int cell_index,
                                    std::uint64_t s_mask);

struct StandardInequalities {
  InequalityReport base;                        // S = {}, threshold b_1(X)
  std::optional<InequalityReport> two_level;    // S = F_1(X), threshold b_2(X)
};

StandardInequalities standard_inequalities(const CellPartition& partition, int cell_index);

// phi-image of a coset partition (always an exact cell partition)
CellPartition cell_partition_of(const CosetPartition& partition);

// Every distinct partition reachable by recursively splitting a cell along
// one of its free coordinates, starting from the whole box. Not all cell
// partitions arise this way; plenty for property sweeps.
std::vector<CellPartition> enumerate_split_partitions(const Box& box);

}  // namespace dcs

#endif
