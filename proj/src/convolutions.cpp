#include "charsieve/convolutions.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace charsieve {

namespace {

constexpr u64 kConvolutionCap = 100'000'000;

void check_cap(u64 N) {
  if (N < 1 || N > kConvolutionCap)
    throw std::length_error("convolutions: N out of [1, 10^8]");
}

// lambda(p^e) from chi(p): chi = 1 -> e+1, chi = 0 -> 1, chi = -1 -> 1 - e%2.
i64 lambda_prime_power(int chi_p, int e) {
  if (chi_p == 1) return e + 1;
  if (chi_p == 0) return 1;
  return (e % 2 == 0) ? 1 : 0;
}

}  // namespace

ArithTable build_lambda(const RealCharacter& chi, u64 N) {
  check_cap(N);
  ArithTable t;
  t.lo = 1;
  t.hi = N;
  t.values.assign(N, 0.0);
  // Sieve pass: each d adds chi(d) to all multiples.
  for (u64 d = 1; d <= N; ++d) {
    int c = chi.chi(d);
    if (c == 0) continue;
    double cd = double(c);
    for (u64 m = d; m <= N; m += d) t.values[m - 1] += cd;
  }
  return t;
}

ArithTable build_lambda_prime(const RealCharacter& chi, u64 N) {
  check_cap(N);
  ArithTable t;
  t.lo = 1;
  t.hi = N;
  t.values.assign(N, 0.0);
  // lambda'(d*m) += chi(d) log m; outer loop over m so log is computed once.
  for (u64 m = 2; m <= N; ++m) {
    double lm = std::log(double(m));
    for (u64 d = 1, nm = m; nm <= N; ++d, nm += m) {
      int c = chi.chi(d);
      if (c) t.values[nm - 1] += c * lm;
    }
  }
  return t;
}

ConvolutionTables build_convolutions(const RealCharacter& chi, u64 N) {
  ConvolutionTables tables;
  tables.chi = chi;
  tables.N = N;
  tables.lambda = build_lambda(chi, N);
  tables.lambda_prime = build_lambda_prime(chi, N);
  return tables;
}

i64 lambda_at(const RealCharacter& chi, const FactoredInteger& f) {
  i64 v = 1;
  for (const auto& [p, e] : f.factors) {
    v *= lambda_prime_power(chi.chi(p), e);
    if (v == 0) return 0;
  }
  return v;
}

double lambda_prime_at(const RealCharacter& chi, const FactoredInteger& f) {
  KahanSum s;
  for (u64 d : divisors(f)) {
    int c = chi.chi(d);
    if (c) s.add(c * std::log(double(f.n / d)));
  }
  return s.value();
}

IdentityReport verify_lambda_identity(const ConvolutionTables& tables) {
  const u64 N = tables.N;
  const ArithTable& lam = tables.lambda;
  const ArithTable& lamp = tables.lambda_prime;

  // Smallest prime factor over [1, N] to expand n = p^j m cheaply.
  std::vector<u32> spf(N + 1, 0);
  for (u64 i = 2; i <= N; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= N; j += i)
        if (spf[j] == 0) spf[j] = u32(i);

  IdentityReport report;
  report.N = N;
  for (u64 n = 2; n <= N; ++n) {
    // (lambda * Lambda)(n) = sum_{p^j | n, j >= 1} lambda(n / p^j) log p.
    double conv = 0.0;
    u64 m = n;
    while (m > 1) {
      u64 p = spf[m];
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      double lp = std::log(double(p));
      u64 npj = n;
      for (int j = 1; j <= e; ++j) {
        npj /= p;
        conv += lam.at(npj) * lp;
      }
    }
    double dev = std::abs(conv - lamp.at(n));
    if (dev > report.max_abs_deviation) {
      report.max_abs_deviation = dev;
      report.argmax_n = n;
    }
  }
  return report;
}

IdentityReport verify_lambda_identity(const RealCharacter& chi, u64 N) {
  return verify_lambda_identity(build_convolutions(chi, N));
}

MultiplicativityReport multiplicativity_check(
    const RealCharacter& chi, std::span<const std::pair<u64, u64>> pairs) {
  MultiplicativityReport report;
  for (const auto& [m1, m2] : pairs) {
    if (std::gcd(m1, m2) != 1)
      throw std::invalid_argument("multiplicativity_check: pair not coprime");
    if (u128(m1) * m2 > u128(UINT64_MAX))
      throw std::overflow_error("multiplicativity_check: product overflows");
    i64 lhs = lambda_at(chi, factorize(m1 * m2));
    i64 rhs = lambda_at(chi, factorize(m1)) * lambda_at(chi, factorize(m2));
    ++report.checked;
    if (lhs != rhs) ++report.failures;
  }
  return report;
}

}  // namespace charsieve
