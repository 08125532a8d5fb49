#include "dcskit/parallelotope.hpp"

#include <algorithm>
#include <set>

namespace dcs {

namespace {

constexpr Int kMaxScanVolume = Int{1} << 24;

// rank of a point in row-major order, used to index scan tables
std::size_t point_rank(const Box& box, const Point& p) {
  std::size_t rank = 0;
  for (int i = 0; i < box.dim(); ++i)
    rank = rank * static_cast<std::size_t>(box.side(i)) + static_cast<std::size_t>(p[static_cast<std::size_t>(i)]);
  return rank;
}

void for_each_point_of_cell(const Box& box, const Cell& cell, auto&& fn) {
  Point p = cell.base;
  std::vector<int> free_coords;
  for (int i = 0; i < box.dim(); ++i)
    if (cell.free_mask >> i & 1) free_coords.push_back(i);
  while (true) {
    fn(p);
    int j = static_cast<int>(free_coords.size()) - 1;
    for (; j >= 0; --j) {
      int coord = free_coords[static_cast<std::size_t>(j)];
      if (++p[static_cast<std::size_t>(coord)] < box.side(coord)) break;
      p[static_cast<std::size_t>(coord)] = 0;
    }
    if (j < 0) return;
  }
}

Int crt_pair(Int r1, Int m1, Int r2, Int m2) {
  // m1, m2 coprime; combine via m1 * inv(m1 mod m2) steps in 128-bit
  Int m1_mod = m1 % m2;
  // extended Euclid for inv(m1) mod m2
  Int old_r = m1_mod, r = m2, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  Int inv = mod_floor(old_s, m2);
  __int128 diff = mod_floor(r2 - r1, m2);
  __int128 combined = static_cast<__int128>(r1) + static_cast<__int128>(m1) * ((diff * inv) % m2);
  __int128 mod = static_cast<__int128>(m1) * m2;
  combined %= mod;
  if (combined < 0) combined += mod;
  return static_cast<Int>(combined);
}

}  // namespace

Box::Box(std::vector<Int> sides) : sides_(std::move(sides)) {
  if (sides_.empty()) fail(Errc::invalid_argument, "box needs at least one coordinate");
  if (sides_.size() > 63) fail(Errc::invalid_argument, "box dimension above 63 unsupported");
  for (Int b : sides_) {
    if (b < 2) fail(Errc::invalid_argument, "box sides must be at least 2");
    volume_ = checked_mul(volume_, b);
  }
}

Box box_of(Int n) {
  if (n < 2) fail(Errc::invalid_argument, "box_of requires n >= 2");
  std::vector<Int> sides;
  for (const auto& pp : factorize(n))
    for (int e = 0; e < pp.exponent; ++e) sides.push_back(pp.prime);
  return Box(std::move(sides));
}

Point phi(Int n, Int k) {
  if (k < 0 || k >= n) fail(Errc::invalid_argument, "phi: residue out of range");
  Point out;
  for (const auto& pp : factorize(n)) {
    Int block_mod = pow_checked(pp.prime, pp.exponent);
    Int rem = k % block_mod;
    // most significant digit first
    Int place = block_mod / pp.prime;
    for (int r = 0; r < pp.exponent; ++r) {
      out.push_back(rem / place);
      rem %= place;
      place /= pp.prime;
    }
  }
  return out;
}

Int phi_inv(Int n, const Point& point) {
  Factorization f = factorize(n);
  std::size_t pos = 0;
  Int residue = 0;
  Int modulus = 1;
  for (const auto& pp : f) {
    Int block_mod = pow_checked(pp.prime, pp.exponent);
    Int value = 0;
    for (int r = 0; r < pp.exponent; ++r, ++pos) {
      if (pos >= point.size()) fail(Errc::invalid_argument, "phi_inv: point has too few coordinates");
      Int digit = point[pos];
      if (digit < 0 || digit >= pp.prime)
        fail(Errc::invalid_argument, "phi_inv: coordinate outside the box");
      value = value * pp.prime + digit;
    }
    residue = crt_pair(residue, modulus, value, block_mod);
    modulus = checked_mul(modulus, block_mod);
  }
  if (pos != point.size()) fail(Errc::invalid_argument, "phi_inv: point has too many coordinates");
  return residue;
}

Int Cell::size(const Box& box) const {
  Int out = 1;
  for (int i = 0; i < box.dim(); ++i)
    if (free_mask >> i & 1) out = checked_mul(out, box.side(i));
  return out;
}

bool Cell::contains(const Box& box, const Point& p) const {
  for (int i = 0; i < box.dim(); ++i) {
    if (free_mask >> i & 1) continue;
    if (p[static_cast<std::size_t>(i)] != base[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

Cell make_cell(const Box& box, Point base, std::uint64_t free_mask) {
  if (static_cast<int>(base.size()) != box.dim())
    fail(Errc::invalid_argument, "cell base dimension mismatch");
  if (free_mask & ~box.full_mask()) fail(Errc::invalid_argument, "free set outside the box");
  for (int i = 0; i < box.dim(); ++i) {
    auto& c = base[static_cast<std::size_t>(i)];
    if (c < 0 || c >= box.side(i)) fail(Errc::invalid_argument, "cell base outside the box");
    if (free_mask >> i & 1) c = 0;
  }
  return Cell{std::move(base), free_mask};
}

CellPartition::CellPartition(Box box, std::vector<Cell> cells)
    : box_(std::move(box)), cells_(std::move(cells)) {
  if (cells_.empty()) fail(Errc::invalid_argument, "cell partition needs at least one cell");
  for (const auto& cell : cells_) {
    if (static_cast<int>(cell.base.size()) != box_.dim())
      fail(Errc::invalid_argument, "cell dimension mismatch");
    if (cell.free_mask & ~box_.full_mask())
      fail(Errc::invalid_argument, "cell free set outside the box");
    for (int i = 0; i < box_.dim(); ++i) {
      Int c = cell.base[static_cast<std::size_t>(i)];
      bool is_free = cell.free_mask >> i & 1;
      if (c < 0 || c >= box_.side(i) || (is_free && c != 0))
        fail(Errc::invalid_argument, "cell base not normalized inside the box");
    }
  }
}

CellCoverReport validate_cell_partition(const CellPartition& partition) {
  const Box& box = partition.box();
  if (box.volume() > kMaxScanVolume)
    fail(Errc::overflow, "cell partition scan volume exceeds desk-scale bound");
  std::vector<int> owner(static_cast<std::size_t>(box.volume()), -1);
  CellCoverReport report;
  for (int j = 0; j < partition.t(); ++j) {
    bool clash = false;
    for_each_point_of_cell(box, partition.cells()[static_cast<std::size_t>(j)], [&](const Point& p) {
      if (clash) return;
      auto& slot = owner[point_rank(box, p)];
      if (slot >= 0) {
        report.kind = CellCoverKind::overlap;
        report.witness = p;
        report.first = slot;
        report.second = j;
        clash = true;
        return;
      }
      slot = j;
    });
    if (clash) return report;
  }
  for (std::size_t rank = 0; rank < owner.size(); ++rank) {
    if (owner[rank] >= 0) continue;
    report.kind = CellCoverKind::gap;
    Point p(static_cast<std::size_t>(box.dim()));
    std::size_t rest = rank;
    for (int i = box.dim() - 1; i >= 0; --i) {
      p[static_cast<std::size_t>(i)] = static_cast<Int>(rest % static_cast<std::size_t>(box.side(i)));
      rest /= static_cast<std::size_t>(box.side(i));
    }
    report.witness = p;
    return report;
  }
  return report;
}

Cell coset_to_cell(const Coset& k) {
  const Factorization f = factorize(k.ambient);
  const Int size = k.size();
  std::uint64_t mask = 0;
  int offset = 0;
  for (const auto& pp : f) {
    int r = nu(pp.prime, size);
    for (int i = 0; i < r; ++i) mask |= 1ULL << (offset + i);
    offset += pp.exponent;
  }
  Point base = phi(k.ambient, k.residue);
  for (int i = 0; i < offset; ++i)
    if (mask >> i & 1) base[static_cast<std::size_t>(i)] = 0;
  return Cell{std::move(base), mask};
}

std::optional<Coset> cell_to_coset(Int n, const Cell& cell) {
  const Factorization f = factorize(n);
  const Box box = box_of(n);
  if (static_cast<int>(cell.base.size()) != box.dim())
    fail(Errc::invalid_argument, "cell does not match box_of(n)");
  Int index = 1;
  int offset = 0;
  for (const auto& pp : f) {
    int r = 0;
    while (r < pp.exponent && (cell.free_mask >> (offset + r) & 1)) ++r;
    for (int i = r; i < pp.exponent; ++i)
      if (cell.free_mask >> (offset + i) & 1) return std::nullopt;  // not a per-block prefix
    index = checked_mul(index, pow_checked(pp.prime, pp.exponent - r));
    offset += pp.exponent;
  }
  Int anchor = phi_inv(n, cell.base);
  return Coset{n, index, mod_floor(anchor, index)};
}

bool index_divisibility(const Coset& k, const Coset& k2) {
  if (k.ambient != k2.ambient) fail(Errc::invalid_argument, "index_divisibility: ambient mismatch");
  const std::uint64_t ind = coset_to_cell(k).free_mask;
  const std::uint64_t ind2 = coset_to_cell(k2).free_mask;
  const bool subset = (ind2 & ~ind) == 0;
  const bool divides = k.size() % k2.size() == 0;
  if (subset != divides)
    fail(Errc::internal, "index inclusion disagrees with size divisibility");
  return subset;
}

InequalityReport general_inequality(const CellPartition& partition, int cell_index,
                                    std::uint64_t s_mask) {
  if (cell_index < 0 || cell_index >= partition.t())
    fail(Errc::invalid_argument, "cell index out of range");
  const Box& box = partition.box();
  const Cell& x = partition.cells()[static_cast<std::size_t>(cell_index)];
  if (s_mask & x.free_mask) fail(Errc::invalid_argument, "BadS: S meets ind(X)");
  if (s_mask & ~box.full_mask()) fail(Errc::invalid_argument, "BadS: S outside the box");
  const std::uint64_t closed = x.free_mask | s_mask;
  const std::uint64_t rest = box.full_mask() & ~closed;
  if (rest == 0) fail(Errc::invalid_argument, "EmptyR: no coordinate left outside ind(X) and S");

  InequalityReport report;
  report.target = x.size(box);
  report.threshold = 0;
  for (int i = 0; i < box.dim(); ++i) {
    if (!(rest >> i & 1)) continue;
    if (report.threshold == 0 || box.side(i) < report.threshold) report.threshold = box.side(i);
  }
  for (int j = 0; j < partition.t(); ++j) {
    const Cell& cj = partition.cells()[static_cast<std::size_t>(j)];
    if (cj.free_mask & ~closed) continue;
    report.lhs = checked_add(report.lhs, cj.size(box));
    report.contributing.push_back(j);
  }
  report.holds = report.lhs >= checked_mul(report.threshold, report.target);
  return report;
}

StandardInequalities standard_inequalities(const CellPartition& partition, int cell_index) {
  StandardInequalities out{general_inequality(partition, cell_index, 0), std::nullopt};
  const Box& box = partition.box();
  const Cell& x = partition.cells()[static_cast<std::size_t>(cell_index)];
  const Int b1 = out.base.threshold;
  std::uint64_t f1 = 0;
  for (int i = 0; i < box.dim(); ++i) {
    if (x.free_mask >> i & 1) continue;
    if (box.side(i) == b1) f1 |= 1ULL << i;
  }
  if ((x.free_mask | f1) != box.full_mask())
    out.two_level = general_inequality(partition, cell_index, f1);
  return out;
}

CellPartition cell_partition_of(const CosetPartition& partition) {
  Box box = box_of(partition.n());
  std::vector<Cell> cells;
  cells.reserve(partition.cosets().size());
  for (const auto& k : partition.cosets()) cells.push_back(coset_to_cell(k));
  return CellPartition(std::move(box), std::move(cells));
}

std::vector<CellPartition> enumerate_split_partitions(const Box& box) {
  using Key = std::vector<Cell>;
  auto canonical = [](std::vector<Cell> cells) {
    std::sort(cells.begin(), cells.end());
    return cells;
  };

  std::set<Key> seen;
  std::vector<Key> queue;
  Key root{Cell{Point(static_cast<std::size_t>(box.dim()), 0), box.full_mask()}};
  seen.insert(root);
  queue.push_back(root);

  for (std::size_t head = 0; head < queue.size(); ++head) {
    Key current = queue[head];
    for (std::size_t ci = 0; ci < current.size(); ++ci) {
      const Cell cell = current[ci];
      for (int i = 0; i < box.dim(); ++i) {
        if (!(cell.free_mask >> i & 1)) continue;
        Key next;
        next.reserve(current.size() + static_cast<std::size_t>(box.side(i)) - 1);
        for (std::size_t cj = 0; cj < current.size(); ++cj)
          if (cj != ci) next.push_back(current[cj]);
        for (Int v = 0; v < box.side(i); ++v) {
          Cell piece = cell;
          piece.free_mask &= ~(1ULL << i);
          piece.base[static_cast<std::size_t>(i)] = v;
          next.push_back(std::move(piece));
        }
        next = canonical(std::move(next));
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }

  std::vector<CellPartition> out;
  out.reserve(queue.size());
  for (auto& key : queue) out.emplace_back(box, std::move(key));
  return out;
}

}  // namespace dcs
