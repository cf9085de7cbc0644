#include "charsieve/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "charsieve/convolutions.hpp"
#include "charsieve/quadratic_roots.hpp"

namespace charsieve {

namespace {

constexpr u64 kDenseWindowCap = 50'000'000;

std::vector<double> dense_window(const SparseSequence& seq) {
  if (seq.x > kDenseWindowCap) throw std::length_error("dense window: x too large");
  std::vector<double> dense(seq.x, 0.0);
  for (std::size_t i = 0; i < seq.keys.size(); ++i)
    dense[seq.keys[i] - seq.x - 1] = seq.values[i];
  return dense;
}

double bump_mass() {
  static const double mass = adaptive_simpson(
      [](double t) { return std::exp(-1.0 / (1.0 - t * t)); }, -1.0 + 1e-16,
      1.0 - 1e-16, 1e-15);
  return mass;
}

// psi_hat(s) = int_{-1}^{1} bump(v) e(s v) dv; real and even in s.
double bump_fourier(double s) {
  double tol = 1e-14;
  int panels = std::max(8, int(8.0 * std::abs(s)));
  double acc = 0.0;
  double width = 2.0 / panels;
  for (int i = 0; i < panels; ++i) {
    double a = -1.0 + i * width, b = a + width;
    acc += adaptive_simpson(
        [s](double v) { return bump(v) * std::cos(2.0 * kPi * s * v); }, a, b,
        tol / panels);
  }
  return acc;
}

}  // namespace

double bump(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t)) / bump_mass();
}

std::vector<RemainderRecord> remainder_table(const SparseSequence& a,
                                             const RealCharacter& chi,
                                             double X, u64 D) {
  if (D < 1) throw std::invalid_argument("remainder_table: D >= 1");
  if (double(D) > std::pow(double(a.x), 0.9))
    throw std::length_error("remainder_table: D above x^0.9");
  const std::vector<double> dense = dense_window(a);
  const u64 x = a.x;
  DensityG g(a.q);

  const u64 chunk = 512;
  const std::size_t chunks = std::size_t((D + chunk - 1) / chunk);
  auto blocks = run_chunks<std::vector<RemainderRecord>>(chunks, [&](std::size_t ci) {
    std::vector<RemainderRecord> rows;
    const u64 d_begin = u64(ci) * chunk + 1;
    const u64 d_end = std::min(D, (u64(ci) + 1) * chunk);
    for (u64 d = d_begin; d <= d_end; ++d) {
      KahanSum raw, twisted;
      for (u64 m = (x / d + 1) * d; m <= 2 * x; m += d) {
        double v = dense[m - x - 1];
        if (v != 0.0) {
          raw.add(v);
          int c = chi.chi(m / d);
          if (c) twisted.add(v * c);
        }
      }
      RemainderRecord rec;
      rec.d = d;
      rec.raw_sum = raw.value();
      rec.expected = g(d).to_double() * X;
      rec.r_d = rec.raw_sum - rec.expected;
      rec.twisted = twisted.value();
      rows.push_back(rec);
    }
    return rows;
  });

  std::vector<RemainderRecord> records;
  records.reserve(D);
  for (auto& b : blocks) records.insert(records.end(), b.begin(), b.end());
  return records;
}

double aggregate_remainder(const std::vector<RemainderRecord>& records,
                           double theta, u64 x) {
  const double D_theta = std::pow(double(x), theta);
  u64 maxd = 1;
  for (const auto& rec : records)
    if (double(rec.d) <= D_theta) maxd = std::max(maxd, rec.d);
  ArithTable mu = moebius_table(1, maxd);
  KahanSum s;
  for (const auto& rec : records) {
    if (double(rec.d) > D_theta) continue;
    if (mu.at(rec.d) == 0.0) continue;
    s.add(std::abs(rec.r_d));
  }
  return s.value();
}

std::vector<ExponentScanRow> exponent_scan(
    const std::vector<RemainderRecord>& records, u64 x, double X,
    const std::vector<double>& theta_grid) {
  std::vector<ExponentScanRow> rows;
  rows.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    ExponentScanRow row;
    row.theta = theta;
    row.aggregate = aggregate_remainder(records, theta, x);
    row.normalized = X != 0.0 ? row.aggregate / X : 0.0;
    rows.push_back(row);
  }
  return rows;
}

PoissonReport poisson_check(const SmoothWindow& window, u64 d, u64 a, double eps) {
  if (d < 1) throw std::invalid_argument("poisson_check: d >= 1");
  if (window.M < 10.0) throw std::invalid_argument("poisson_check: M >= 10");
  const double M = window.M;
  const double m0 = window.m0;

  PoissonReport rep;

  // Left side: psi((m - m0)/M) over m = a (mod d), support |m - m0| < M.
  KahanSum lhs;
  i64 first = i64(std::ceil(m0 - M));
  i64 rem = ((first - i64(a)) % i64(d) + i64(d)) % i64(d);
  if (rem != 0) first += i64(d) - rem;
  for (i64 m = first; double(m) < m0 + M; m += i64(d))
    lhs.add(bump((double(m) - m0) / M));
  rep.lhs = lhs.value();

  // Right side: the h-truncated Fourier expansion,
  //   sum_h (M/d) psi_hat(h M / d) e(h (m0 - a)/d),  |h| <= H = M^eps d / M.
  const double H = std::pow(M, eps) * double(d) / M;
  const int hmax = int(H);
  rep.h_range = hmax;
  double rhs = (M / d) * bump_fourier(0.0);
  for (int h = 1; h <= hmax; ++h) {
    double coeff = bump_fourier(double(h) * M / double(d));
    double phase = 2.0 * kPi * double(h) * (m0 - double(a)) / double(d);
    rhs += 2.0 * (M / d) * coeff * std::cos(phase);
  }
  rep.rhs = rhs;
  rep.deviation = std::abs(rep.lhs - rep.rhs);
  return rep;
}

namespace {

struct LargeSieveModuli {
  struct Modulus {
    u64 d;
    u64 qbar;
    std::vector<u64> roots;
  };
  std::vector<Modulus> mods;
};

LargeSieveModuli large_sieve_moduli(u64 D, u64 q) {
  LargeSieveModuli out;
  for (u64 d = D + 1; d <= 2 * D; ++d) {
    if (std::gcd(d, q) != 1) continue;
    RootSet rs = roots_minus_one(d);
    if (rs.roots.empty()) continue;
    out.mods.push_back({d, inverse_mod(q % d, d), rs.roots});
  }
  return out;
}

std::pair<double, double> large_sieve_ratios(const LargeSieveModuli& moduli,
                                             u64 D, u64 q,
                                             std::span<const std::complex<double>> alpha) {
  const u64 N = alpha.size() - 1;
  double norm2 = 0.0;
  for (u64 n = 1; n <= N; ++n) norm2 += std::norm(alpha[n]);
  KahanSum lhs, lhs2;
  for (const auto& mod : moduli.mods) {
    for (u64 nu : mod.roots) {
      const double ang = 2.0 * kPi * double(mulmod(nu, mod.qbar, mod.d)) / double(mod.d);
      const std::complex<double> w(std::cos(ang), std::sin(ang));
      std::complex<double> rot = 1.0, sum = 0.0;
      for (u64 n = 1; n <= N; ++n) {
        rot *= w;
        sum += alpha[n] * rot;
      }
      lhs.add(std::abs(sum));
      lhs2.add(std::norm(sum));
    }
  }
  const double denom = (double(D) * double(q) + double(N)) * norm2;
  return {lhs.value() / denom, lhs2.value() / denom};
}

}  // namespace

LargeSieveReport large_sieve_ratio(u64 D, u64 q, u64 N, int trials, u64 seed) {
  if (D < 1 || D > 10'000) throw std::length_error("large_sieve_ratio: D in [1, 10^4]");
  if (N < 1 || N > 100'000) throw std::length_error("large_sieve_ratio: N in [1, 10^5]");
  const LargeSieveModuli moduli = large_sieve_moduli(D, q);

  LargeSieveReport rep;
  rep.trials = trials;
  auto maxima = run_chunks<std::pair<double, double>>(std::size_t(trials), [&](std::size_t t) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (t + 1)));
    std::vector<std::complex<double>> alpha(N + 1);
    if (t % 2 == 0) {
      for (u64 n = 1; n <= N; ++n) alpha[n] = (rng() & 1) ? 1.0 : -1.0;
    } else {
      std::normal_distribution<double> gauss;
      for (u64 n = 1; n <= N; ++n) alpha[n] = {gauss(rng), gauss(rng)};
    }
    return large_sieve_ratios(moduli, D, q, alpha);
  });
  for (const auto& [r1, r2] : maxima) {
    rep.max_ratio = std::max(rep.max_ratio, r1);
    rep.max_ratio_squared = std::max(rep.max_ratio_squared, r2);
  }
  return rep;
}

LargeSieveReport large_sieve_ratio_alpha(u64 D, u64 q,
                                         std::span<const std::complex<double>> alpha) {
  if (D < 1 || D > 10'000) throw std::length_error("large_sieve_ratio: D in [1, 10^4]");
  LargeSieveReport rep;
  rep.trials = 1;
  auto [r1, r2] = large_sieve_ratios(large_sieve_moduli(D, q), D, q, alpha);
  rep.max_ratio = r1;
  rep.max_ratio_squared = r2;
  return rep;
}

namespace {

std::vector<std::int8_t> quadratic_character(u64 q) {
  std::vector<std::int8_t> chi(q, -1);
  chi[0] = 0;
  for (u64 m = 1; m < q; ++m) chi[mulmod(m, m, q)] = 1;
  return chi;
}

}  // namespace

i64 weil_character_sum(u64 q, u64 a, u64 b) {
  if (q > 100'000 || !is_prime(q)) throw std::invalid_argument("weil: q prime <= 10^5");
  if (a % q == 0) throw std::invalid_argument("weil: a = 0 (mod q)");
  const std::vector<std::int8_t> chi = quadratic_character(q);
  i64 sum = 0;
  for (u64 m = 0; m < q; ++m) sum += chi[(mulmod(m, mulmod(m, a % q, q), q) + b) % q];
  return sum;
}

WeilReport weil_ratio(u64 q, int trials, u64 seed) {
  if (q > 100'000 || !is_prime(q)) throw std::invalid_argument("weil_ratio: q prime <= 10^5");
  const std::vector<std::int8_t> chi = quadratic_character(q);

  WeilReport rep;
  rep.trials = trials;
  std::mt19937_64 rng(seed ^ (0xd1342543de82ef95ull * q));
  for (int t = 0; t < trials; ++t) {
    u64 a = 1 + rng() % (q - 1);
    u64 b = rng() % q;
    i64 sum = 0;
    for (u64 m = 0; m < q; ++m) sum += chi[(mulmod(m, mulmod(m, a, q), q) + b) % q];
    double gcd_b = (b == 0) ? double(q) : 1.0;
    double ratio = std::abs(double(sum)) / (std::sqrt(gcd_b) * std::sqrt(double(q)));
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

ExceptionalSumsReport exceptional_sums(const RealCharacter& chi, u64 x, u64 z) {
  if (x < 1 || x > 100'000'000)
    throw std::length_error("exceptional_sums: x out of [1, 10^8]");
  const u64 q = chi.modulus;

  const u64 root = isqrt(x);
  std::vector<u64> base;
  for_primes_in(2, root, [&](u64 p) { base.push_back(p); });

  auto g_pp = [&](u64 p, int e) -> double {
    if (q % p == 0) return 0.0;
    u64 r = (p == 2) ? (e == 1 ? 1 : 0) : (p % 4 == 3 ? 0 : 2);
    if (r == 0) return 0.0;
    double pe = std::pow(double(p), double(e));
    return double(r) * double(p) / (pe * double(p + 1));
  };
  auto lam_pp = [&](u64 p, int e) -> i64 {
    int c = chi.chi(p);
    if (c == 1) return e + 1;
    if (c == 0) return 1;
    return (e % 2 == 0) ? 1 : 0;
  };

  const u64 seg_len = 1u << 21;
  KahanSum sum_chi_g, sum_lambda_g;
  std::vector<u64> rem;
  std::vector<double> gval;
  std::vector<double> lam;
  for (u64 left = 1; left <= x; left += seg_len) {
    const u64 right = std::min(x, left + seg_len - 1);
    const u64 len = right - left + 1;
    rem.resize(len);
    gval.assign(len, 1.0);
    lam.assign(len, 1.0);
    for (u64 i = 0; i < len; ++i) rem[i] = left + i;
    for (u64 p : base) {
      for (u64 m = (left + p - 1) / p * p; m <= right; m += p) {
        u64 i = m - left;
        int e = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++e;
        }
        gval[i] *= g_pp(p, e);
        lam[i] *= double(lam_pp(p, e));
      }
    }
    for (u64 i = 0; i < len; ++i) {
      const u64 n = left + i;
      double g_n = gval[i];
      double lam_n = lam[i];
      if (rem[i] > 1) {
        g_n *= g_pp(rem[i], 1);
        lam_n *= double(lam_pp(rem[i], 1));
      }
      if (g_n == 0.0) continue;
      int c = chi.chi(n);
      if (c) sum_chi_g.add(c * g_n);
      if (n > z && lam_n != 0.0) sum_lambda_g.add(lam_n * g_n);
    }
  }

  ExceptionalSumsReport rep;
  rep.sum_chi_g = sum_chi_g.value();
  rep.sum_lambda_g = sum_lambda_g.value();
  rep.l_one = l_one_exact(chi);
  double lx = std::log(double(x));
  rep.norm_chi = rep.sum_chi_g / rep.l_one;
  rep.norm_lambda = rep.sum_lambda_g / (rep.l_one * lx * lx);
  return rep;
}

}  // namespace charsieve
