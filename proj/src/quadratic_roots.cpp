#include "charsieve/quadratic_roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace charsieve {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Hensel: root of nu^2 + 1 mod p lifted to mod p^e (p odd).
u64 hensel_lift(u64 nu, u64 p, int e) {
  u64 mod = p;
  for (int j = 1; j < e; ++j) {
    u64 newmod = mod * p;
    u64 fm = u64((u128(nu) * nu + 1) % newmod);
    u64 t = (fm / mod) % p;
    u64 inv = inverse_mod((2 * nu) % p, p);
    u64 s = (p - u64(u128(t) * inv % p)) % p;
    nu += s * mod;
    mod = newmod;
  }
  return nu;
}

std::vector<u64> prime_power_roots(u64 p, int e, u64 pe) {
  if (p == 2) {
    if (e == 1) return {1};
    return {};
  }
  if (p % 4 == 3) return {};
  u64 r = sqrt_minus_one(p);
  u64 lifted = hensel_lift(r, p, e);
  return {std::min(lifted, pe - lifted), std::max(lifted, pe - lifted)};
}

}  // namespace

Rational::Rational(i128 n, i128 d) : num(n), den(d) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    den = 1;
    return;
  }
  i128 g = gcd128(num, den);
  num /= g;
  den /= g;
}

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce before multiplying to keep magnitudes down.
  i128 g1 = gcd128(num, o.den);
  i128 g2 = gcd128(o.num, den);
  return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

double Rational::to_double() const { return double(num) / double(den); }

RootSet roots_minus_one(u64 d) {
  if (d == 0) throw std::domain_error("roots_minus_one: d = 0");
  RootSet out;
  out.modulus = d;
  if (d == 1) {
    out.roots = {0};
    return out;
  }
  std::vector<u64> roots{0};
  u64 mod = 1;
  for (const auto& [p, e] : factorize(d).factors) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    std::vector<u64> local = prime_power_roots(p, e, pe);
    if (local.empty()) return out;  // no roots at this prime power
    std::vector<u64> next;
    next.reserve(roots.size() * local.size());
    u64 inv = inverse_mod(mod % pe, pe);
    for (u64 r1 : roots)
      for (u64 r2 : local) {
        // x = r1 (mod), x = r2 (pe)
        u64 diff = (r2 + pe - r1 % pe) % pe;
        u64 x = r1 + mod * u64(u128(diff) * inv % pe);
        next.push_back(x);
      }
    roots.swap(next);
    mod *= pe;
  }
  std::sort(roots.begin(), roots.end());
  out.roots = std::move(roots);
  return out;
}

u64 rho(const FactoredInteger& f) {
  u64 count = 1;
  for (const auto& [p, e] : f.factors) {
    if (p == 2) {
      if (e >= 2) return 0;
      continue;  // rho(2) = 1
    }
    if (p % 4 == 3) return 0;
    count *= 2;
  }
  return count;
}

u64 rho(u64 d) {
  if (d == 0) throw std::domain_error("rho: d = 0");
  return rho(factorize(d));
}

Rational g_value(const FactoredInteger& f, u64 q) {
  Rational g(1, 1);
  for (const auto& [p, e] : f.factors) {
    if (q % p == 0) return Rational(0, 1);
    u64 r;
    if (p == 2)
      r = (e == 1) ? 1 : 0;
    else if (p % 4 == 3)
      r = 0;
    else
      r = 2;
    if (r == 0) return Rational(0, 1);
    i128 pe = 1;
    for (int i = 0; i < e; ++i) pe *= i128(p);
    g = g * Rational(i128(r) * i128(p), pe * (i128(p) + 1));
  }
  return g;
}

Rational g_value(u64 d, u64 q) {
  if (d == 0) throw std::domain_error("g_value: d = 0");
  return g_value(factorize(d), q);
}

double g_double(u64 d, u64 q) { return g_value(d, q).to_double(); }

Rational DensityG::operator()(u64 d) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(d);
    if (it != memo_.end()) return it->second;
  }
  Rational g = g_value(d, q_);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(d, g);
  return g;
}

double g_sum_weighted(const std::function<double(u64)>& alpha, u64 D, u64 q) {
  if (D > 100'000'000) throw std::length_error("g_sum_weighted: D > 10^8");
  KahanSum s;
  if (D < 1) return 0.0;
  // Multiplicative fill over [1, D] via smallest prime factors.
  std::vector<u32> spf(D + 1, 0);
  for (u64 i = 2; i <= D; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= D; j += i)
        if (spf[j] == 0) spf[j] = u32(i);
  std::vector<double> g(D + 1, 0.0);
  g[1] = 1.0;
  s.add(alpha(1));
  for (u64 d = 2; d <= D; ++d) {
    u64 p = spf[d];
    u64 rest = d;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    double gp;  // g(p^e)
    if (q % p == 0)
      gp = 0.0;
    else {
      u64 r = (p == 2) ? (e == 1 ? 1 : 0) : (p % 4 == 3 ? 0 : 2);
      double pe = std::pow(double(p), double(e));
      gp = double(r) * double(p) / (pe * double(p + 1));
    }
    g[d] = g[rest] * gp;
    if (g[d] != 0.0) {
      double a = alpha(d);
      if (a != 0.0) s.add(a * g[d]);
    }
  }
  return s.value();
}

}  // namespace charsieve
