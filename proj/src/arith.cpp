#include "dcskit/arith.hpp"

#include <algorithm>
#include <numeric>

namespace dcs {

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) fail(Errc::overflow, "integer addition overflow");
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) fail(Errc::overflow, "integer multiplication overflow");
  return out;
}

Int pow_checked(Int base, int exp) {
  if (exp < 0) fail(Errc::invalid_argument, "negative exponent");
  Int out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm2(Int a, Int b) {
  if (a <= 0 || b <= 0) fail(Errc::invalid_argument, "lcm requires positive integers");
  return checked_mul(a / std::gcd(a, b), b);
}

Int lcm_all(const std::vector<Int>& values) {
  Int out = 1;
  for (Int v : values) out = lcm2(out, v);
  return out;
}

Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (Int d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

Factorization factorize(Int n) {
  if (n < 1 || n > kMaxInput) fail(Errc::invalid_argument, "factorize: input outside [1, 2^62]");
  Factorization out;
  auto strip = [&](Int p) {
    if (n % p != 0) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  };
  strip(2);
  strip(3);
  strip(5);
  // 2,3,5 wheel
  static constexpr int kSteps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  Int d = 7;
  int i = 0;
  while (d <= n / d) {
    strip(d);
    d += kSteps[i];
    i = (i + 1) & 7;
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

Int factorization_value(const Factorization& f) {
  Int out = 1;
  for (const auto& pp : f) out = checked_mul(out, pow_checked(pp.prime, pp.exponent));
  return out;
}

Int sigma(Int n) {
  if (n < 1) fail(Errc::invalid_argument, "sigma requires n >= 1");
  Int out = 1;
  for (const auto& pp : factorize(n)) {
    // sigma(p^a) = (p^{a+1} - 1) / (p - 1), accumulated multiplicatively
    Int term = 1;
    Int power = 1;
    for (int e = 0; e < pp.exponent; ++e) {
      power = checked_mul(power, pp.prime);
      term = checked_add(term, power);
    }
    out = checked_mul(out, term);
  }
  return out;
}

int nu(Int p, Int n) {
  if (!is_prime(p)) fail(Errc::invalid_argument, "nu requires a prime p");
  if (n < 1) fail(Errc::invalid_argument, "nu requires n >= 1");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::vector<Int> divisors(Int n) {
  Factorization f = factorize(n);
  std::vector<Int> out{1};
  for (const auto& pp : f) {
    std::size_t old = out.size();
    Int power = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      power = checked_mul(power, pp.prime);
      for (std::size_t i = 0; i < old; ++i) out.push_back(checked_mul(out[i], power));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool supported_on(Int q, const std::vector<Int>& primes) {
  if (q < 1) fail(Errc::invalid_argument, "supported_on requires q >= 1");
  for (Int p : primes) {
    while (q % p == 0) q /= p;
  }
  return q == 1;
}

Rational::Rational(Int num, Int den) : num_(num), den_(den) {
  if (den_ == 0) fail(Errc::invalid_argument, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Int g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator+(const Rational& other) const {
  Int g = std::gcd(den_, other.den_);
  Int scale = other.den_ / g;
  Int num = checked_add(checked_mul(num_, scale), checked_mul(other.num_, den_ / g));
  Int den = checked_mul(den_, scale);
  return Rational(num, den);
}

Rational Rational::operator*(const Rational& other) const {
  Int g1 = std::gcd(num_ < 0 ? -num_ : num_, other.den_);
  Int g2 = std::gcd(other.num_ < 0 ? -other.num_ : other.num_, den_);
  return Rational(checked_mul(num_ / g1, other.num_ / g2),
                  checked_mul(den_ / g2, other.den_ / g1));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace dcs
