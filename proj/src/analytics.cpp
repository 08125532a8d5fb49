#include "dcskit/analytics.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

namespace dcs {

namespace {

const Coset& coset_at(const CosetPartition& partition, int k_index) {
  if (k_index < 0 || k_index >= partition.t())
    fail(Errc::invalid_argument, "coset index out of range");
  return partition.cosets()[static_cast<std::size_t>(k_index)];
}

}  // namespace

PrimeProfile prime_profile(Int m) {
  if (m < 2) fail(Errc::invalid_argument, "prime_profile requires m >= 2");
  const Factorization f = factorize(m);
  PrimeProfile out;
  out.p1 = f[0].prime;
  out.e1 = f[0].exponent;
  if (f.size() > 1) out.p2 = f[1].prime;
  return out;
}

InequalityReport coset_base_inequality(const CosetPartition& partition, int k_index) {
  const Coset& k = coset_at(partition, k_index);
  if (k.size() == partition.n())
    fail(Errc::invalid_argument, "FullGroupCoset: inequality needs |K| < n");
  const PrimeProfile profile = prime_profile(partition.n() / k.size());

  InequalityReport report;
  report.target = k.size();
  report.threshold = profile.p1;
  for (int i = 0; i < partition.t(); ++i) {
    const Coset& ki = partition.cosets()[static_cast<std::size_t>(i)];
    if (k.size() % ki.size() != 0) continue;
    report.lhs = checked_add(report.lhs, ki.size());
    report.contributing.push_back(i);
  }
  report.holds = report.lhs >= checked_mul(report.threshold, report.target);
  return report;
}

std::optional<InequalityReport> coset_two_level_inequality(const CosetPartition& partition,
                                                           int k_index) {
  const Coset& k = coset_at(partition, k_index);
  if (k.size() == partition.n())
    fail(Errc::invalid_argument, "FullGroupCoset: inequality needs |K| < n");
  const PrimeProfile profile = prime_profile(partition.n() / k.size());
  if (!profile.p2) return std::nullopt;  // prime power

  const Int bound = checked_mul(k.size(), pow_checked(profile.p1, profile.e1));
  InequalityReport report;
  report.target = k.size();
  report.threshold = *profile.p2;
  for (int i = 0; i < partition.t(); ++i) {
    const Coset& ki = partition.cosets()[static_cast<std::size_t>(i)];
    if (bound % ki.size() != 0) continue;
    report.lhs = checked_add(report.lhs, ki.size());
    report.contributing.push_back(i);
  }
  report.holds = report.lhs >= checked_mul(report.threshold, report.target);
  return report;
}

Int pi_h(const Coset& k, int h, const Factorization& n_primes) {
  const int levels = static_cast<int>(n_primes.size());
  if (h < 1 || h > levels) fail(Errc::invalid_argument, "pi_h: level out of range");
  Int out = 1;
  for (int j = h; j < levels; ++j) {
    const Int p = n_primes[static_cast<std::size_t>(j)].prime;
    out = checked_mul(out, pow_checked(p, nu(p, k.size())));
  }
  return out;
}

std::vector<int> divisor_set(const CosetPartition& partition, int k_index) {
  const Coset& k = coset_at(partition, k_index);
  std::vector<int> out;
  for (int i = 0; i < partition.t(); ++i) {
    if (i == k_index) continue;
    if (k.size() % partition.cosets()[static_cast<std::size_t>(i)].size() == 0) out.push_back(i);
  }
  return out;
}

ClassReport level_class(const CosetPartition& partition, int h, Int q) {
  const Factorization n_primes = factorize(partition.n());
  const int levels = static_cast<int>(n_primes.size());
  if (h < 1 || h > levels) fail(Errc::invalid_argument, "level_class: level out of range");
  std::vector<Int> upper;
  for (int j = h; j < levels; ++j) upper.push_back(n_primes[static_cast<std::size_t>(j)].prime);
  if (q < 1 || !supported_on(q, upper))
    fail(Errc::invalid_argument,
         "BadSupport: Q = " + std::to_string(q) + " is not supported on the primes above level " +
             std::to_string(h));

  ClassReport report;
  report.h = h;
  report.q = q;
  const Int p_h = n_primes[static_cast<std::size_t>(h - 1)].prime;
  for (int i = 0; i < partition.t(); ++i) {
    const Coset& k = partition.cosets()[static_cast<std::size_t>(i)];
    if (pi_h(k, h, n_primes) != q) continue;
    report.members.push_back(i);
    report.size_sum = checked_add(report.size_sum, k.size());
    int val = nu(p_h, k.size());
    if (!report.d_h || val > *report.d_h) report.d_h = val;
  }
  return report;
}

std::vector<Int> realized_level_values(const CosetPartition& partition, int h) {
  const Factorization n_primes = factorize(partition.n());
  std::vector<Int> out;
  for (const auto& k : partition.cosets()) out.push_back(pi_h(k, h, n_primes));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_division_minimal(const CosetPartition& partition, const std::vector<int>& subfamily,
                         int k_index) {
  const Coset& k = coset_at(partition, k_index);
  for (int i : subfamily) {
    if (i == k_index) continue;
    const Coset& other = coset_at(partition, i);
    if (k.size() % other.size() == 0) return false;
  }
  return true;
}

Int divisor_sum_gap(Int n) {
  if (n < 2) fail(Errc::invalid_argument, "divisor_sum_gap requires n >= 2");
  const Factorization f = factorize(n);
  const Int largest_prime = f.back().prime;
  return n - sigma(n / largest_prime);
}

Rational uncovered_density(const std::vector<Progression>& progressions) {
  for (const auto& p : progressions) {
    if (p.modulus < 1 || p.residue < 0 || p.residue >= p.modulus)
      fail(Errc::invalid_argument, "progression residue must be reduced mod its modulus");
  }
  for (std::size_t i = 0; i < progressions.size(); ++i) {
    for (std::size_t j = i + 1; j < progressions.size(); ++j) {
      Int g = gcd(progressions[i].modulus, progressions[j].modulus);
      if (mod_floor(progressions[i].residue - progressions[j].residue, g) == 0)
        fail(Errc::invalid_argument,
             "OverlapDetected: progressions " + std::to_string(i) + " and " + std::to_string(j) +
                 " intersect");
    }
  }
  Int period = 1;
  for (const auto& p : progressions) period = lcm2(period, p.modulus);
  Int covered = 0;
  for (const auto& p : progressions) covered = checked_add(covered, period / p.modulus);
  return Rational(period - covered, period);
}

std::optional<Int> simpson_prime_bound(Int m) {
  if (m < 1) fail(Errc::invalid_argument, "simpson_prime_bound requires m >= 1");
  using boost::multiprecision::cpp_int;
  // product over primes below the candidate, kept exact; primorials outgrow
  // machine words quickly
  cpp_int num = 1, den = 1;
  std::optional<Int> best;
  int consecutive_misses = 0;
  for (Int p = 2; p < 1000000; ++p) {
    if (!is_prime(p)) continue;
    if (cpp_int(m) * num >= cpp_int(p) * den) {
      best = p;
      consecutive_misses = 0;
    } else if (++consecutive_misses > 64) {
      break;
    }
    num *= p;
    den *= p - 1;
  }
  return best;
}

}  // namespace dcs
