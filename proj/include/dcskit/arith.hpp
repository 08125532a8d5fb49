#ifndef DCSKIT_ARITH_HPP
#define DCSKIT_ARITH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dcskit/error.hpp"

namespace dcs {

// All arithmetic is exact on machine words; anything that would leave the
// representable range raises Errc::overflow instead of wrapping.
using Int = std::int64_t;

inline constexpr Int kMaxInput = Int{1} << 62;

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int pow_checked(Int base, int exp);

Int gcd(Int a, Int b);
Int lcm2(Int a, Int b);
Int lcm_all(const std::vector<Int>& values);

// floor-mod: result in [0, m) for m > 0
Int mod_floor(Int a, Int m);

struct PrimePower {
  Int prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Primes strictly ascending, exponents >= 1; empty for n = 1.
using Factorization = std::vector<PrimePower>;

bool is_prime(Int n);
Factorization factorize(Int n);
Int factorization_value(const Factorization& f);

Int sigma(Int n);
int nu(Int p, Int n);
std::vector<Int> divisors(Int n);

// true iff every prime divisor of q lies in `primes`; q = 1 is supported on
// every set
bool supported_on(Int q, const std::vector<Int>& primes);

// Exact rational with reduced representation and positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(Int num, Int den);

  Int num() const { return num_; }
  Int den() const { return den_; }

  Rational operator+(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  friend bool operator==(const Rational&, const Rational&) = default;

  bool is_one() const { return num_ == 1 && den_ == 1; }
  std::string str() const;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace dcs

#endif
