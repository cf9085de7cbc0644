#pragma once

#include <functional>
#include <vector>

#include "charsieve/numeric.hpp"

namespace charsieve {

struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;  // all primes <= limit, strictly increasing
};

struct PrimePower {
  u64 p;
  int e;
};

struct FactoredInteger {
  u64 n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing, e >= 1
};

// Dense values of an arithmetic function on [lo, hi].  Integer-valued
// functions (mu, tau_k, lambda) store exact small integers in the doubles.
struct ArithTable {
  u64 lo = 1;
  u64 hi = 0;
  std::vector<double> values;

  double at(u64 n) const { return values[n - lo]; }
  double& at(u64 n) { return values[n - lo]; }
  u64 length() const { return hi - lo + 1; }
};

PrimeTable sieve_primes(u64 limit);

// Streams primes in [lo, hi] (segmented, no table materialised).
void for_primes_in(u64 lo, u64 hi, const std::function<void(u64)>& fn);

ArithTable von_mangoldt_table(u64 lo, u64 hi);
ArithTable moebius_table(u64 lo, u64 hi);

bool is_prime(u64 n);
FactoredInteger factorize(u64 n);

u64 divisor_count(const FactoredInteger& f);  // tau(n)
u64 divisor_count(u64 n);

// tau_k(n): ordered k-tuples with product n.
u64 divisor_power(u64 n, int k);

// Some d | n with d <= n^(1/k) and tau(n) <= 2^k tau(d)^k.
u64 divisor_witness(u64 n, int k);

// All divisors, ascending.
std::vector<u64> divisors(const FactoredInteger& f);

double von_mangoldt(const FactoredInteger& f);  // log p if n = p^e, else 0
u64 smallest_prime_factor(const FactoredInteger& f);  // 1 for n = 1

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 inverse_mod(u64 a, u64 m);  // throws if gcd(a, m) != 1

// Smallest root of nu^2 + 1 = 0 (mod p) for p = 2 or p = 1 (mod 4).
u64 sqrt_minus_one(u64 p);

}  // namespace charsieve
