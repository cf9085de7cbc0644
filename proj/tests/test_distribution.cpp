#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "charsieve/distribution.hpp"
#include "charsieve/quadratic_roots.hpp"

using namespace charsieve;

TEST_SUITE("distribution") {

TEST_CASE("remainder table structure") {
  RealCharacter chi = RealCharacter::from_discriminant(5);
  SparseSequence a = build_a(100'000, 4, chi.modulus);
  double X = b_total_streaming(100'000, 4, chi.modulus);
  auto records = remainder_table(a, chi, X, 1000);
  REQUIRE(records.size() == 1000);

  // d = 1: raw = total mass, expected = X.
  CHECK(records[0].d == 1);
  CHECK(records[0].raw_sum == doctest::Approx(a.total()).epsilon(1e-12));
  CHECK(records[0].expected == doctest::Approx(X).epsilon(1e-12));
  CHECK(records[0].r_d == doctest::Approx(a.total() - X).epsilon(1e-9));

  // gcd(d, q) > 1: expected = 0 and raw = 0 (keys coprime to q).
  CHECK(records[4].d == 5);
  CHECK(records[4].raw_sum == 0.0);
  CHECK(records[4].expected == 0.0);

  // d = 13 against a brute-force filter.
  double brute = 0.0, brute_twisted = 0.0;
  for (std::size_t i = 0; i < a.keys.size(); ++i)
    if (a.keys[i] % 13 == 0) {
      brute += a.values[i];
      brute_twisted += a.values[i] * chi.chi(a.keys[i] / 13);
    }
  CHECK(records[12].raw_sum == brute);
  CHECK(records[12].twisted == doctest::Approx(brute_twisted).epsilon(1e-12));
}

TEST_CASE("remainder raw sums reconcile with divisor counts") {
  RealCharacter chi = RealCharacter::from_discriminant(5);
  SparseSequence a = build_a(100'000, 4, chi.modulus);
  const u64 D = 1000;
  auto records = remainder_table(a, chi, 1.0, D);
  double total_raw = 0.0;
  for (const auto& rec : records) total_raw += rec.raw_sum;
  double oracle = 0.0;
  for (std::size_t i = 0; i < a.keys.size(); ++i) {
    u64 small_divisors = 0;
    for (u64 d : divisors(factorize(a.keys[i])))
      if (d <= D) ++small_divisors;
    oracle += a.values[i] * double(small_divisors);
  }
  CHECK(total_raw == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("aggregate remainder endpoints and monotonicity") {
  RealCharacter chi = RealCharacter::from_discriminant(5);
  SparseSequence a = build_a(100'000, 4, chi.modulus);
  double X = b_total_streaming(100'000, 4, chi.modulus);
  auto records = remainder_table(a, chi, X, 2000);

  double at0 = aggregate_remainder(records, 0.0, a.x);
  CHECK(at0 == doctest::Approx(std::abs(records[0].r_d)).epsilon(1e-12));

  double prev = -1.0;
  for (double theta : {0.1, 0.3, 0.5, 0.65}) {
    double agg = aggregate_remainder(records, theta, a.x);
    CHECK(agg >= prev);
    prev = agg;
  }

  auto rows = exponent_scan(records, a.x, X, {0.0, 0.3, 0.5});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].theta == 0.0);
  CHECK(rows[0].normalized == doctest::Approx(at0 / X).epsilon(1e-12));
  CHECK(rows[1].aggregate <= rows[2].aggregate);
}

TEST_CASE("bump is a normalised compactly supported kernel") {
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(-1.0) == 0.0);
  CHECK(bump(2.0) == 0.0);
  CHECK(bump(0.0) > 0.0);
  CHECK(bump(0.5) == doctest::Approx(bump(-0.5)).epsilon(1e-15));
  double mass = adaptive_simpson([](double t) { return bump(t); }, -1.0, 1.0, 1e-13);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("poisson check: d = 1 and generic pairs") {
  SmoothWindow w{1000.0, 5000.0};
  PoissonReport rep = poisson_check(w, 1, 0, 0.5);
  CHECK(rep.deviation <= 1e-6);  // M^-2 at M = 10^3

  PoissonReport rep2 = poisson_check({10'000.0, 123'456.0}, 101, 7, 0.5);
  CHECK(rep2.deviation <= 1e-8);
}

TEST_CASE("poisson left side is shift invariant") {
  SmoothWindow w{1000.0, 77'777.0};
  PoissonReport a = poisson_check(w, 37, 5, 0.5);
  SmoothWindow shifted{1000.0, 77'777.0 + 37.0};
  PoissonReport b = poisson_check(shifted, 37, 5, 0.5);
  CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-12));
}

TEST_CASE("poisson deviation beats the quadratic ceiling across M") {
  for (double M : {1e3, 1e4, 1e5}) {
    PoissonReport rep = poisson_check({M, 3.0 * M}, 53, 11, 0.5);
    CHECK(rep.deviation * M * M <= 1.0);
  }
}

TEST_CASE("large sieve: trivial D and closed-form unit vector") {
  // alpha = unit vector at n = 1: LHS = sum over (d, nu) of 1.
  const u64 D = 4, q = 3, N = 10;
  std::vector<std::complex<double>> alpha(N + 1, 0.0);
  alpha[1] = 1.0;
  u64 root_count = 0;
  for (u64 d = D + 1; d <= 2 * D; ++d)
    if (std::gcd(d, q) == 1) root_count += rho(d);
  LargeSieveReport rep = large_sieve_ratio_alpha(D, q, alpha);
  double expected = double(root_count) / ((double(D) * q + N) * 1.0);
  CHECK(rep.max_ratio == doctest::Approx(expected).epsilon(1e-12));

  // D = 1 with random vectors: Cauchy-Schwarz keeps the ratio below 1.
  LargeSieveReport small = large_sieve_ratio(1, 5, 1000, 20, 42);
  CHECK(small.max_ratio <= 1.0);
}

TEST_CASE("large sieve ratio is scale invariant") {
  const u64 D = 50, q = 5, N = 500;
  std::mt19937_64 rng(7);
  std::vector<std::complex<double>> alpha(N + 1);
  for (u64 n = 1; n <= N; ++n)
    alpha[n] = {double(rng() % 1000) / 500.0 - 1.0, double(rng() % 1000) / 500.0 - 1.0};
  LargeSieveReport r1 = large_sieve_ratio_alpha(D, q, alpha);
  for (auto& v : alpha) v *= 3.0;
  LargeSieveReport r3 = large_sieve_ratio_alpha(D, q, alpha);
  CHECK(r1.max_ratio == doctest::Approx(r3.max_ratio).epsilon(1e-12));
  CHECK(r1.max_ratio_squared == doctest::Approx(r3.max_ratio_squared).epsilon(1e-12));
}

TEST_CASE("weil character sums: exact small cases") {
  // q = 5, a = 1, b = 1: values chi(m^2+1) for m = 0..4.
  CHECK(weil_character_sum(5, 1, 1) == -1);
  // b = 0: sum chi(a m^2) = chi(a) (q - 1).
  CHECK(weil_character_sum(13, 2, 0) == kronecker(13, 2) * 12);
  CHECK(weil_character_sum(13, 1, 0) == 12);
  CHECK_THROWS_AS(weil_character_sum(13, 0, 1), std::invalid_argument);

  WeilReport rep = weil_ratio(97, 200, 11);
  CHECK(rep.max_ratio <= 2.0);
}

TEST_CASE("exceptional sums: empty range and oracle agreement") {
  RealCharacter chi = RealCharacter::from_discriminant(-4);
  ExceptionalSumsReport rep = exceptional_sums(chi, 500, 1000);
  CHECK(rep.sum_lambda_g == 0.0);  // z >= x: empty second range

  ExceptionalSumsReport r2 = exceptional_sums(chi, 10'000, 100);
  KahanSum chi_g, lam_g;
  for (u64 n = 1; n <= 10'000; ++n) {
    FactoredInteger f = factorize(n);
    double g = g_value(f, chi.modulus).to_double();
    if (g == 0.0) continue;
    int c = chi.chi(n);
    if (c) chi_g.add(c * g);
    if (n > 100) {
      i64 lam = 1;
      for (const auto& [p, e] : f.factors) {
        int cp = chi.chi(p);
        lam *= (cp == 1) ? e + 1 : (cp == 0 ? 1 : (e % 2 == 0 ? 1 : 0));
        if (lam == 0) break;
      }
      if (lam != 0) lam_g.add(double(lam) * g);
    }
  }
  CHECK(r2.sum_chi_g == doctest::Approx(chi_g.value()).epsilon(1e-10));
  CHECK(r2.sum_lambda_g == doctest::Approx(lam_g.value()).epsilon(1e-10));
  CHECK(r2.sum_lambda_g >= 0.0);
}

}  // TEST_SUITE
