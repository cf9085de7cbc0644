#include "charsieve/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace charsieve {

namespace {

constexpr u64 kMaxX = 10'000'000'000ull;       // 10^10
constexpr u64 kMaxMaterializedB = 50'000'000;  // dense window buffer cap
constexpr double kMaxEntries = 6e7;

// Legs of the (essentially unique) coprime representation p = u^2 + v^2 for
// p = 2 or p = 1 (mod 4): Euclid descent from (p, sqrt(-1) mod p).
std::pair<u64, u64> two_squares_prime(u64 p) {
  if (p == 2) return {1, 1};
  u64 a = p, b = sqrt_minus_one(p);
  const u64 root = isqrt(p);
  while (b > root) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  u64 other = isqrt(p - b * b);
  return {b, other};
}

double rep_weight(u64 leg, int k) {
  // b^(-1+1/k) / k per representation, applied to each ordered pair.
  return std::pow(double(leg), -1.0 + 1.0 / k) / k;
}

struct GaussInt {
  i64 re, im;
  GaussInt operator*(const GaussInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

// Contribution of prime powers p^j in (x, 2x] (j >= 2) to sum b_n Lambda(n):
// the primitive representation of p^j comes from the j-th Gaussian power.
double b_lambda_prime_powers(u64 x, int k, u64 q) {
  KahanSum s;
  const u64 hi = 2 * x;
  for (u64 p = 2; p * p <= hi; ++p) {
    if (!is_prime(p)) continue;
    if (p != 2 && p % 4 != 1) continue;
    if (q % p == 0) continue;
    u128 pj = u128(p) * p;
    int j = 2;
    while (pj <= hi) {
      if (pj > x) {
        if (p == 2) break;  // 2^j has no coprime representation for j >= 2
        auto [u0, v0] = two_squares_prime(p);
        GaussInt z{i64(u0), i64(v0)}, w{1, 0};
        for (int i = 0; i < j; ++i) w = w * z;
        u64 a = u64(std::abs(w.re)), b = u64(std::abs(w.im));
        s.add(std::log(double(p)) * (rep_weight(a, k) + rep_weight(b, k)));
      }
      pj *= p;
      ++j;
    }
  }
  return s.value();
}

}  // namespace

double SparseSequence::at(u64 n) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), n);
  if (it == keys.end() || *it != n) return 0.0;
  return values[std::size_t(it - keys.begin())];
}

double SparseSequence::total() const {
  KahanSum s;
  for (double v : values) s.add(v);
  return s.value();
}

SparseSequence build_a(u64 x, int k, u64 q) {
  if (x < 1 || x > kMaxX) throw std::length_error("build_a: x out of [1, 10^10]");
  if (k < 1 || k > 16) throw std::invalid_argument("build_a: k in [1, 16]");
  if (q < 1) throw std::invalid_argument("build_a: q >= 1");
  if (std::pow(double(x), 0.5 + 0.5 / k) > kMaxEntries)
    throw std::length_error("build_a: window too dense to materialise");

  std::vector<u64> raw;
  const u64 hi = 2 * x;
  for (u64 b = 1;; ++b) {
    u128 bp = 1;
    bool over = false;
    for (int i = 0; i < 2 * k; ++i) {
      bp *= b;
      if (bp > hi) {
        over = true;
        break;
      }
    }
    if (over) break;
    const u64 b2k = u64(bp);
    u64 a_lo = (x >= b2k) ? isqrt(x - b2k) : 0;  // a > a_lo
    while (u128(a_lo + 1) * (a_lo + 1) + b2k <= x) ++a_lo;
    u64 a_hi = isqrt(hi - b2k);  // a <= a_hi
    for (u64 a = a_lo + 1; a <= a_hi; ++a) {
      if (std::gcd(a, b) != 1) continue;
      u64 n = a * a + b2k;
      if (std::gcd(n, q) != 1) continue;
      raw.push_back(n);
    }
  }
  std::sort(raw.begin(), raw.end());

  SparseSequence seq;
  seq.x = x;
  seq.k = k;
  seq.q = q;
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    while (j < raw.size() && raw[j] == raw[i]) ++j;
    seq.keys.push_back(raw[i]);
    seq.values.push_back(double(j - i));
    i = j;
  }
  return seq;
}

SparseSequence build_b(u64 x, int k, u64 q) {
  if (x < 1 || x > kMaxMaterializedB)
    throw std::length_error("build_b: x out of [1, 5*10^7] (use streaming aggregates)");
  if (k < 1 || k > 16) throw std::invalid_argument("build_b: k in [1, 16]");

  std::vector<double> dense(x, 0.0);  // window (x, 2x], index n - x - 1
  const u64 hi = 2 * x;
  for (u64 b = 1; b * b < hi; ++b) {
    const u64 b2 = b * b;
    const double w = rep_weight(b, k);
    u64 a_lo = (x >= b2) ? isqrt(x - b2) : 0;
    while (u128(a_lo + 1) * (a_lo + 1) + b2 <= x) ++a_lo;
    u64 a_hi = isqrt(hi - b2);
    for (u64 a = a_lo + 1; a <= a_hi; ++a) {
      if (std::gcd(a, b) != 1) continue;
      u64 n = a * a + b2;
      if (std::gcd(n, q) != 1) continue;
      dense[n - x - 1] += w;
    }
  }

  SparseSequence seq;
  seq.x = x;
  seq.k = k;
  seq.q = q;
  for (u64 i = 0; i < x; ++i) {
    if (dense[i] != 0.0) {
      seq.keys.push_back(x + 1 + i);
      seq.values.push_back(dense[i]);
    }
  }
  return seq;
}

double b_total_streaming(u64 x, int k, u64 q) {
  if (x < 1 || x > kMaxX) throw std::length_error("b_total_streaming: x out of range");
  const u64 hi = 2 * x;
  const u64 bmax = isqrt(hi - 1);
  const u64 chunk = 256;
  const std::size_t chunks = std::size_t((bmax + chunk - 1) / chunk);
  auto partials = run_chunks<KahanSum>(chunks, [&](std::size_t ci) {
    KahanSum s;
    const u64 b_begin = ci * chunk + 1;
    const u64 b_end = std::min(bmax, (u64(ci) + 1) * chunk);
    for (u64 b = b_begin; b <= b_end; ++b) {
      const u64 b2 = b * b;
      if (b2 >= hi) break;
      const double w = rep_weight(b, k);
      u64 a_lo = (x >= b2) ? isqrt(x - b2) : 0;
      while (u128(a_lo + 1) * (a_lo + 1) + b2 <= x) ++a_lo;
      u64 a_hi = isqrt(hi - b2);
      for (u64 a = a_lo + 1; a <= a_hi; ++a) {
        if (std::gcd(a, b) != 1) continue;
        if (std::gcd(a * a + b2, q) != 1) continue;
        s.add(w);
      }
    }
    return s;
  });
  KahanSum total;
  for (const auto& p : partials) total.merge(p);
  return total.value();
}

double b_lambda_sum_streaming(u64 x, int k, u64 q) {
  if (x < 1 || x > kMaxX)
    throw std::length_error("b_lambda_sum_streaming: x out of range");
  const u64 lo = x + 1, hi = 2 * x;

  // Base primes once; segments processed on the worker pool, merged in order.
  const u64 root = isqrt(hi);
  std::vector<u64> base;
  for_primes_in(2, root, [&](u64 p) { base.push_back(p); });

  const u64 seg_len = 1u << 22;
  const std::size_t chunks = std::size_t((hi - lo) / seg_len + 1);
  auto partials = run_chunks<KahanSum>(chunks, [&](std::size_t ci) {
    KahanSum s;
    const u64 left = lo + u64(ci) * seg_len;
    const u64 right = std::min(hi, left + seg_len - 1);
    std::vector<std::uint8_t> comp(right - left + 1, 0);
    for (u64 p : base) {
      if (p * p > right) break;
      u64 start = std::max(p * p, (left + p - 1) / p * p);
      for (u64 m = start; m <= right; m += p) comp[m - left] = 1;
    }
    for (u64 n = left; n <= right; ++n) {
      if (comp[n - left]) continue;
      if (n < 2) continue;
      // n prime: representable iff n = 2 or n = 1 (mod 4).
      if (n != 2 && n % 4 != 1) continue;
      if (q % n == 0) continue;
      auto [u, v] = two_squares_prime(n);
      s.add(std::log(double(n)) * (rep_weight(u, k) + rep_weight(v, k)));
    }
    return s;
  });
  KahanSum total;
  for (const auto& p : partials) total.merge(p);
  total.add(b_lambda_prime_powers(x, k, q));
  return total.value();
}

double a_lambda_sum(const SparseSequence& a) {
  KahanSum s;
  for (std::size_t i = 0; i < a.keys.size(); ++i) {
    double lam = von_mangoldt(factorize(a.keys[i]));
    if (lam > 0.0) s.add(a.values[i] * lam);
  }
  return s.value();
}

double kappa(int n, double tol) {
  if (n < 1) throw std::invalid_argument("kappa: n >= 1");
  if (tol < 1e-14) tol = 1e-14;
  // Split at a = 0.7; near t = 1 substitute t = (1 - v^2)^(1/n), which turns
  // the sqrt-singularity of the derivative into a smooth integrand:
  //   int_a^1 sqrt(1 - t^n) dt = (2/n) int_0^{v0} v^2 (1 - v^2)^(1/n - 1) dv.
  const double a = 0.7;
  const double an = std::pow(a, double(n));
  const double v0 = std::sqrt(1.0 - an);
  double head = adaptive_simpson(
      [n](double t) { return std::sqrt(1.0 - std::pow(t, double(n))); }, 0.0, a,
      tol * 0.5);
  double tail = adaptive_simpson(
      [n](double v) {
        return v * v * std::pow(1.0 - v * v, 1.0 / n - 1.0);
      },
      0.0, v0, tol * 0.5 * n / 2.0);
  return head + (2.0 / n) * tail;
}

double main_term(double x, int k) {
  if (x < 2.0) throw std::invalid_argument("main_term: x >= 2");
  double kap = kappa(2 * k, 1e-13);
  return 4.0 / kPi * kap * std::pow(x, 0.5 + 0.5 / k);
}

double main_term_dyadic(double x, int k) { return main_term(2.0 * x, k) - main_term(x, k); }

}  // namespace charsieve
