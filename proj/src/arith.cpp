#include "charsieve/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace charsieve {

namespace {

unsigned g_workers = 0;

constexpr u64 kSieveLimitCap = 1ULL << 40;
constexpr u64 kTableLengthCap = 150'000'000;
constexpr u64 kSegmentLength = 1u << 21;

// Plain byte sieve; fine for base primes (limit <= ~10^8).
std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> is_comp(limit + 1, 0);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!is_comp[i])
      for (u64 j = i * i; j <= limit; j += i) is_comp[j] = 1;
  if (limit > 16)
    primes.reserve(static_cast<std::size_t>(1.2 * double(limit) / std::log(double(limit))));
  for (u64 i = 2; i <= limit; ++i)
    if (!is_comp[i]) primes.push_back(i);
  return primes;
}

void check_window(u64 lo, u64 hi) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("window: need 1 <= lo <= hi");
  if (hi - lo + 1 > kTableLengthCap)
    throw std::length_error("window exceeds table capacity");
}

// Cached primes <= 10^6 for trial division.
const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = simple_sieve(1'000'000);
  return primes;
}

u64 brent_rho(u64 n);

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = brent_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Brent's cycle variant of Pollard rho; only ever called on odd composites
// with no factor <= 10^6.
u64 brent_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        u64 len = std::min(m, r - k);
        for (u64 i = 0; i < len; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

}  // namespace

void set_worker_count(unsigned n) { g_workers = n; }

unsigned worker_count() {
  if (g_workers > 0) return g_workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

u64 iroot(u64 n, int k) {
  if (k <= 0) throw std::invalid_argument("iroot: k >= 1");
  if (k == 1 || n < 2) return n;
  u64 r = static_cast<u64>(std::pow(double(n), 1.0 / k));
  auto pow_le = [&](u64 b) {
    u128 v = 1;
    for (int i = 0; i < k; ++i) {
      v *= b;
      if (v > n) return false;
    }
    return true;
  };
  while (r > 1 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 inverse_mod(u64 a, u64 m) {
  i128 t = 0, newt = 1, r = i128(m), newr = i128(a % m);
  while (newr != 0) {
    i128 quo = r / newr;
    i128 tmp = t - quo * newt;
    t = newt;
    newt = tmp;
    tmp = r - quo * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("inverse_mod: not invertible");
  if (t < 0) t += m;
  return u64(t);
}

u64 sqrt_minus_one(u64 p) {
  if (p == 2) return 1;
  if (p % 4 != 1) throw std::domain_error("sqrt_minus_one: p != 1 (mod 4)");
  // -1 = c^((p-1)/2) for any non-residue c, so c^((p-1)/4) is a root.
  for (u64 c = 2;; ++c) {
    if (powmod(c, (p - 1) / 2, p) == p - 1) {
      u64 r = powmod(c, (p - 1) / 4, p);
      return std::min(r, p - r);
    }
  }
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = m > 1 ? 1 : 0;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic witness set for all n < 2^64.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeTable sieve_primes(u64 limit) {
  if (limit < 2 || limit > kSieveLimitCap)
    throw std::length_error("sieve_primes: limit out of [2, 2^40]");
  PrimeTable table;
  table.limit = limit;
  if (limit <= 2'000'000) {
    table.primes = simple_sieve(limit);
    return table;
  }
  table.primes.reserve(static_cast<std::size_t>(1.1 * double(limit) / std::log(double(limit))));
  for_primes_in(2, limit, [&](u64 p) { table.primes.push_back(p); });
  return table;
}

void for_primes_in(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<u64>(lo, 2);
  const u64 root = isqrt(hi);
  const std::vector<u64> base = simple_sieve(root);
  if (lo <= root) {
    for (u64 p : base)
      if (p >= lo) fn(p);
    lo = root + 1;
    if (lo > hi) return;
  }
  std::vector<std::uint8_t> seg;
  for (u64 left = lo; left <= hi; left += kSegmentLength) {
    const u64 right = std::min(hi, left + kSegmentLength - 1);
    seg.assign(right - left + 1, 1);
    for (u64 p : base) {
      if (p * p > right) break;
      u64 start = std::max(p * p, (left + p - 1) / p * p);
      for (u64 m = start; m <= right; m += p) seg[m - left] = 0;
    }
    for (u64 n = left; n <= right; ++n)
      if (seg[n - left]) fn(n);
  }
}

ArithTable von_mangoldt_table(u64 lo, u64 hi) {
  check_window(lo, hi);
  ArithTable t;
  t.lo = lo;
  t.hi = hi;
  t.values.assign(hi - lo + 1, 0.0);

  const u64 root = isqrt(hi);
  const std::vector<u64> base = simple_sieve(root);

  // Composite marking: n in the window with no factor <= sqrt(hi) is prime.
  std::vector<std::uint8_t> comp(hi - lo + 1, 0);
  for (u64 p : base) {
    u64 start = std::max(p * 2, (lo + p - 1) / p * p);
    for (u64 m = start; m <= hi; m += p) comp[m - lo] = 1;
  }
  for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n)
    if (!comp[n - lo]) t.at(n) = std::log(double(n));

  // Proper prime powers p^j, j >= 2 (their base p is <= sqrt(hi)).
  for (u64 p : base) {
    double lp = std::log(double(p));
    u128 q = u128(p) * p;
    while (q <= hi) {
      if (q >= lo) t.at(static_cast<u64>(q)) = lp;
      q *= p;
    }
  }
  return t;
}

ArithTable moebius_table(u64 lo, u64 hi) {
  check_window(lo, hi);
  const u64 len = hi - lo + 1;
  ArithTable t;
  t.lo = lo;
  t.hi = hi;
  t.values.assign(len, 1.0);

  std::vector<u64> rem(len);
  for (u64 i = 0; i < len; ++i) rem[i] = lo + i;
  std::vector<std::int8_t> mu(len, 1);

  const u64 root = isqrt(hi);
  for (u64 p : simple_sieve(root)) {
    u64 start = (lo + p - 1) / p * p;
    for (u64 m = start; m <= hi; m += p) {
      u64 i = m - lo;
      if (mu[i] == 0) {
        while (rem[i] % p == 0) rem[i] /= p;
        continue;
      }
      int cnt = 0;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        ++cnt;
      }
      if (cnt >= 2)
        mu[i] = 0;
      else
        mu[i] = -mu[i];
    }
  }
  for (u64 i = 0; i < len; ++i) {
    if (mu[i] != 0 && rem[i] > 1) mu[i] = -mu[i];  // one prime factor > sqrt(hi)
    t.values[i] = double(mu[i]);
  }
  return t;
}

FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::domain_error("factorize: n = 0");
  FactoredInteger f;
  f.n = n;
  if (n == 1) return f;

  u64 m = n;
  for (u64 p : trial_primes()) {
    if (p * p > m) break;
    if (m % p == 0) {
      int e = 0;
      do {
        m /= p;
        ++e;
      } while (m % p == 0);
      f.factors.push_back({p, e});
    }
  }
  if (m > 1) {
    std::vector<u64> rest;
    factor_into(m, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      f.factors.push_back({rest[i], int(j - i)});
      i = j;
    }
  }
  return f;
}

u64 divisor_count(const FactoredInteger& f) {
  u64 t = 1;
  for (const auto& [p, e] : f.factors) t *= u64(e) + 1;
  return t;
}

u64 divisor_count(u64 n) { return divisor_count(factorize(n)); }

u64 divisor_power(u64 n, int k) {
  if (n < 1 || k < 1 || k > 64)
    throw std::invalid_argument("divisor_power: n >= 1, 1 <= k <= 64");
  FactoredInteger f = factorize(n);
  u128 total = 1;
  for (const auto& [p, e] : f.factors) {
    // C(e + k - 1, k - 1), multiplicative across prime powers.
    u128 c = 1;
    for (int i = 1; i <= e; ++i) {
      c = c * (u64(k) - 1 + i) / i;  // exact: product of i consecutive over i!
    }
    total *= c;
    if (total > u128(UINT64_MAX)) throw std::overflow_error("divisor_power overflow");
  }
  return static_cast<u64>(total);
}

std::vector<u64> divisors(const FactoredInteger& f) {
  std::vector<u64> ds{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t old = ds.size();
    u64 q = 1;
    for (int j = 1; j <= e; ++j) {
      q *= p;
      for (std::size_t i = 0; i < old; ++i) ds.push_back(ds[i] * q);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

double von_mangoldt(const FactoredInteger& f) {
  if (f.factors.size() == 1) return std::log(double(f.factors[0].p));
  return 0.0;
}

u64 smallest_prime_factor(const FactoredInteger& f) {
  return f.factors.empty() ? 1 : f.factors[0].p;
}

u64 divisor_witness(u64 n, int k) {
  if (n < 1 || k < 2) throw std::invalid_argument("divisor_witness: n >= 1, k >= 2");
  if (n == 1) return 1;
  const u64 cap = iroot(n, k);
  const FactoredInteger f = factorize(n);
  const u64 tau_n = divisor_count(f);
  const u128 budget = u128(1) << k;  // 2^k
  auto satisfies = [&](u64 tau_d) {
    u128 v = budget;
    for (int i = 0; i < k; ++i) {
      v *= tau_d;
      if (v >= tau_n) return true;
    }
    return v >= tau_n;
  };

  // Greedy: pack prime-power factors into k buckets capped at n^(1/k),
  // splitting exponents when a full power does not fit; keep the bucket
  // with the largest tau.
  struct Bucket {
    u64 prod = 1;
    u64 tau = 1;
  };
  std::vector<Bucket> buckets(k);
  std::vector<PrimePower> parts(f.factors);
  std::sort(parts.begin(), parts.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.e > b.e; });
  for (const auto& [p, e] : parts) {
    int left = e;
    while (left > 0) {
      auto best = std::min_element(
          buckets.begin(), buckets.end(),
          [](const Bucket& a, const Bucket& b) { return a.prod < b.prod; });
      int c = 0;
      u64 prod = best->prod;
      while (c < left && prod <= cap / p) {
        prod *= p;
        ++c;
      }
      if (c == 0) break;  // does not fit anywhere; drop the rest of this prime
      best->prod = prod;
      best->tau *= u64(c) + 1;
      left -= c;
    }
  }
  auto top = std::max_element(
      buckets.begin(), buckets.end(),
      [](const Bucket& a, const Bucket& b) { return a.tau < b.tau; });
  if (satisfies(top->tau)) return top->prod;

  // Fallback: the divisor <= n^(1/k) of maximal tau always works.
  u64 best_d = 1, best_tau = 1;
  for (u64 d : divisors(f)) {
    if (d > cap) continue;
    u64 td = divisor_count(factorize(d));
    if (td > best_tau || (td == best_tau && d < best_d)) {
      best_tau = td;
      best_d = d;
    }
  }
  return best_d;
}

}  // namespace charsieve
