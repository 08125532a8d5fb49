#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>

#include "dcskit/analytics.hpp"
#include "helpers.hpp"

using namespace dcs;
using namespace dcs::testing;

namespace {

// Z_4 into the evens and two singletons
CosetPartition z4_partition() {
  return to_coset_partition(testing::doubling_family(3));
}

// Z_12 into {0,3,6,9}, {1,7} and six singletons
CosetPartition z12_partition() {
  std::vector<Coset> cosets{{12, 3, 0}, {12, 6, 1}};
  for (Int r : {2, 4, 5, 8, 10, 11}) cosets.push_back({12, 12, r});
  return CosetPartition(12, std::move(cosets));
}

// independent evaluation of the prime-product bound: test every prime up to
// a cap against the exact fraction, keep the largest that passes
Int simpson_oracle(Int m) {
  namespace mp = boost::multiprecision;
  mp::cpp_int num = 1, den = 1;
  Int best = 0;
  for (Int p = 2; p < 500; ++p) {
    bool prime = true;
    for (Int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    if (mp::cpp_int(m) * num >= mp::cpp_int(p) * den) best = p;
    num *= p;
    den *= p - 1;
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("analytics");

TEST_CASE("prime profiles") {
  PrimeProfile p = prime_profile(12);
  CHECK(p.p1 == 2);
  CHECK(p.p2 == 3);
  CHECK(p.e1 == 2);

  p = prime_profile(8);
  CHECK(p.p1 == 2);
  CHECK_FALSE(p.p2.has_value());
  CHECK(p.e1 == 3);

  p = prime_profile(15);
  CHECK(p.p1 == 3);
  CHECK(p.p2 == 5);
  CHECK(p.e1 == 1);

  CHECK_THROWS_AS(prime_profile(1), Error);
}

TEST_CASE("base coset inequality on Z_4") {
  CosetPartition partition = z4_partition();
  // cosets sorted by descending size: evens first
  InequalityReport r = coset_base_inequality(partition, 0);
  CHECK(r.lhs == 4);  // 2 + 1 + 1
  CHECK(r.threshold == 2);
  CHECK(r.target == 2);
  CHECK(r.holds);
}

TEST_CASE("full-group cosets are rejected") {
  CosetPartition whole(4, {Coset{4, 1, 0}});
  CHECK_THROWS_AS(coset_base_inequality(whole, 0), Error);
  CHECK_THROWS_AS(coset_two_level_inequality(whole, 0), Error);
}

TEST_CASE("two-level inequality is not applicable for prime powers") {
  // Z_8 partition: n/|K| = 8 for singletons
  CosetPartition partition = to_coset_partition(doubling_family(4));
  CHECK_FALSE(coset_two_level_inequality(partition, partition.t() - 1).has_value());
}

TEST_CASE("two-level inequality on the Z_12 partition") {
  CosetPartition partition = z12_partition();
  // a singleton: n/|K| = 12, p1 = 2, e1 = 2, p2 = 3; divisor bound 4
  auto r = coset_two_level_inequality(partition, 2);
  REQUIRE(r.has_value());
  CHECK(r->threshold == 3);
  CHECK(r->target == 1);
  CHECK(r->lhs == 12);  // sizes 4 + 2 + six singletons
  CHECK(r->holds);
}

TEST_CASE("coset inequalities agree with the cell-index formulation") {
  // The divisor-based sums must match what the box picture computes through
  // free-set containment: for the base form against ind(X), for the
  // two-level form against ind(X) extended by the minimal fixed coordinates.
  std::vector<CosetPartition> partitions{z12_partition()};
  for (std::uint64_t seed = 0; seed < 25; ++seed)
    partitions.push_back(to_coset_partition(random_split_system(seed)));

  for (const CosetPartition& partition : partitions) {
    CellPartition image = cell_partition_of(partition);
    const Box& box = image.box();
    for (int i = 0; i < partition.t(); ++i) {
      if (partition.cosets()[static_cast<std::size_t>(i)].size() == partition.n()) continue;
      const Cell& x = image.cells()[static_cast<std::size_t>(i)];

      InequalityReport base = coset_base_inequality(partition, i);
      std::vector<int> via_cells;
      for (int j = 0; j < image.t(); ++j) {
        if ((image.cells()[static_cast<std::size_t>(j)].free_mask & ~x.free_mask) == 0)
          via_cells.push_back(j);
      }
      CHECK(base.contributing == via_cells);
      // the base threshold is the smallest side outside ind(X)
      Int b1 = 0;
      for (int c = 0; c < box.dim(); ++c) {
        if (x.free_mask >> c & 1) continue;
        if (b1 == 0 || box.side(c) < b1) b1 = box.side(c);
      }
      CHECK(base.threshold == b1);

      auto two = coset_two_level_inequality(partition, i);
      std::uint64_t f1 = 0;
      for (int c = 0; c < box.dim(); ++c) {
        if (x.free_mask >> c & 1) continue;
        if (box.side(c) == b1) f1 |= 1ULL << c;
      }
      const std::uint64_t extended = x.free_mask | f1;
      if (!two) {
        CHECK(extended == box.full_mask());
        continue;
      }
      via_cells.clear();
      for (int j = 0; j < image.t(); ++j) {
        if ((image.cells()[static_cast<std::size_t>(j)].free_mask & ~extended) == 0)
          via_cells.push_back(j);
      }
      CHECK(two->contributing == via_cells);
    }
  }
}

TEST_CASE("both coset inequalities hold across generated partitions") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CosetPartition partition = to_coset_partition(random_split_system(seed));
    for (int i = 0; i < partition.t(); ++i) {
      if (partition.cosets()[static_cast<std::size_t>(i)].size() == partition.n()) continue;
      CHECK(coset_base_inequality(partition, i).holds);
      auto two = coset_two_level_inequality(partition, i);
      if (two) CHECK(two->holds);
    }
  }
}

TEST_CASE("pi_h") {
  Factorization primes = factorize(12);
  CHECK(pi_h(Coset{12, 2, 0}, 1, primes) == 3);   // |K| = 6
  CHECK(pi_h(Coset{12, 2, 0}, 2, primes) == 1);   // h = l
  CHECK(pi_h(Coset{12, 3, 0}, 1, primes) == 1);   // |K| = 4, no factor 3
  CHECK_THROWS_AS(pi_h(Coset{12, 2, 0}, 0, primes), Error);
  CHECK_THROWS_AS(pi_h(Coset{12, 2, 0}, 3, primes), Error);
}

TEST_CASE("divisor sets") {
  CosetPartition z4 = z4_partition();
  CHECK(divisor_set(z4, 0) == std::vector<int>{1, 2});  // both singletons divide the evens
  CHECK(divisor_set(z4, 1) == std::vector<int>{2});     // the other singleton

  CosetPartition z12 = z12_partition();
  CHECK(divisor_set(z12, 1) == std::vector<int>{2, 3, 4, 5, 6, 7});  // {1,7} sees the singletons
}

TEST_CASE("level classes") {
  CosetPartition partition = z12_partition();

  // h = l with Q = 1 collects the whole family
  ClassReport all = level_class(partition, 2, 1);
  CHECK(all.members.size() == static_cast<std::size_t>(partition.t()));
  CHECK(all.size_sum == 12);

  // pi_1 splits the family by the 3-part of the size
  ClassReport q1 = level_class(partition, 1, 1);   // sizes 2 and all singletons
  ClassReport q3 = level_class(partition, 1, 3);   // the size-4 coset? no: 4 has no 3-part
  CHECK(q1.size_sum + q3.size_sum == 12);
  CHECK(q3.members.empty() == (q3.size_sum == 0));

  // classes over realized Q values partition the family at every level
  for (int h = 1; h <= 2; ++h) {
    Int total = 0;
    for (Int q : realized_level_values(partition, h)) total += level_class(partition, h, q).size_sum;
    CHECK(total == 12);
  }

  // the same holds across generated partitions with up to three primes
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CosetPartition random = to_coset_partition(random_split_system(seed));
    const int levels = static_cast<int>(factorize(random.n()).size());
    for (int h = 1; h <= levels; ++h) {
      Int total = 0;
      for (Int q : realized_level_values(random, h)) total += level_class(random, h, q).size_sum;
      CHECK(total == random.n());
    }
  }

  CHECK_THROWS_AS(level_class(partition, 1, 2), Error);  // 2 not supported above level 1
  ClassReport empty = level_class(partition, 1, 9);      // supported but unrealized
  CHECK(empty.members.empty());
  CHECK_FALSE(empty.d_h.has_value());
}

TEST_CASE("division minimality") {
  CosetPartition partition = z12_partition();
  std::vector<int> everyone;
  for (int i = 0; i < partition.t(); ++i) everyone.push_back(i);
  // singletons divide each other, so none is division minimal when m >= 2
  CHECK_FALSE(is_division_minimal(partition, everyone, 2));
  // restricted to the non-singletons, {1,7} is division minimal
  CHECK(is_division_minimal(partition, {0, 1}, 1));
  // ... but the size-4 coset is not: 2 divides 4
  CHECK_FALSE(is_division_minimal(partition, {0, 1}, 0));
}

TEST_CASE("divisor sum gap") {
  CHECK(divisor_sum_gap(12) == 5);  // 12 - sigma(4) = 12 - 7
  CHECK(divisor_sum_gap(7) == 6);   // p - sigma(1)
  CHECK_THROWS_AS(divisor_sum_gap(1), Error);

  // closed form for n = 2^a 3^b: 2^a + (3^b - 1) / 2
  for (int a = 1; a <= 10; ++a) {
    for (int b = 1; b <= 10; ++b) {
      Int n = pow_checked(2, a) * pow_checked(3, b);
      CHECK(divisor_sum_gap(n) == pow_checked(2, a) + (pow_checked(3, b) - 1) / 2);
    }
  }
}

TEST_CASE("uncovered density") {
  CHECK(uncovered_density({{0, 2}}) == Rational(1, 2));
  CHECK(uncovered_density({}) == Rational(1, 1));
  CHECK(uncovered_density({{0, 2}, {1, 4}}) == Rational(1, 4));
  CHECK_THROWS_AS(uncovered_density({{0, 2}, {0, 4}}), Error);  // overlap

  // stripping the m largest-modulus progressions leaves density m/n
  DcsSystem sys = period6_m4_system();
  std::vector<Progression> kept(sys.progressions().begin(),
                                sys.progressions().end() - static_cast<std::ptrdiff_t>(sys.m()));
  CHECK(uncovered_density(kept) == Rational(sys.m(), sys.n()));
}

TEST_CASE("simpson prime bound") {
  CHECK_FALSE(simpson_prime_bound(1).has_value());  // 1 * 1 < 2 already
  CHECK(simpson_prime_bound(2) == 7);
  CHECK(simpson_prime_bound(4) == 23);
  for (Int m = 2; m <= 12; ++m) CHECK(simpson_prime_bound(m) == simpson_oracle(m));
  // nondecreasing in m
  Int prev = 2;
  for (Int m = 2; m <= 20; ++m) {
    Int cur = *simpson_prime_bound(m);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_SUITE_END();
