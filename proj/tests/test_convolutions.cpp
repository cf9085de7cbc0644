#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "charsieve/convolutions.hpp"

using namespace charsieve;

namespace {

// Divisor-sum oracle for lambda(n) = sum_{d|n} chi(d).
i64 lambda_oracle(const RealCharacter& chi, u64 n) {
  i64 s = 0;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) s += chi.chi(d);
  return s;
}

double lambda_prime_oracle(const RealCharacter& chi, u64 n) {
  double s = 0.0;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) s += chi.chi(d) * std::log(double(n / d));
  return s;
}

}  // namespace

TEST_SUITE("convolutions") {

TEST_CASE("lambda table examples") {
  RealCharacter chi4 = RealCharacter::from_discriminant(-4);
  ArithTable lam = build_lambda(chi4, 100);
  CHECK(lam.at(5) == 2.0);  // 1 + chi(5)
  CHECK(lam.at(1) == 1.0);
  CHECK(lam.at(9) == 1.0);  // 1 + chi(3) + chi(9) = 1 - 1 + 1
  CHECK(lam.at(45) == 2.0);
  for (u64 n = 1; n <= 100; ++n) CHECK(lam.at(n) == double(lambda_oracle(chi4, n)));
}

TEST_CASE("lambda_prime table examples") {
  RealCharacter chi5 = RealCharacter::from_discriminant(5);
  ArithTable lamp = build_lambda_prime(chi5, 200);
  CHECK(lamp.at(1) == 0.0);
  CHECK(lamp.at(7) == doctest::Approx(std::log(7.0)).epsilon(1e-12));  // chi(1) log p
  CHECK(lamp.at(13) == doctest::Approx(std::log(13.0)).epsilon(1e-12));
  for (u64 n = 1; n <= 200; ++n)
    CHECK(lamp.at(n) == doctest::Approx(lambda_prime_oracle(chi5, n)).epsilon(1e-10));
}

TEST_CASE("pointwise lambda agrees with tables") {
  for (i64 D : {-4, 5, -3, 13}) {
    RealCharacter chi = RealCharacter::from_discriminant(D);
    ArithTable lam = build_lambda(chi, 5000);
    ArithTable lamp = build_lambda_prime(chi, 5000);
    for (u64 n = 1; n <= 5000; n += 7) {
      FactoredInteger f = factorize(n);
      CHECK(double(lambda_at(chi, f)) == lam.at(n));
      CHECK(lambda_prime_at(chi, f) == doctest::Approx(lamp.at(n)).epsilon(1e-10));
    }
  }
}

TEST_CASE("nonnegativity and domination invariants at N = 10^5") {
  const u64 N = 100'000;
  for (i64 D : {-4, 5}) {
    RealCharacter chi = RealCharacter::from_discriminant(D);
    ConvolutionTables tabs = build_convolutions(chi, N);
    CHECK(tabs.lambda.at(1) == 1.0);
    CHECK(tabs.lambda_prime.at(1) == 0.0);
    // tau by divisor-count sieve.
    std::vector<u32> tau(N + 1, 0);
    for (u64 d = 1; d <= N; ++d)
      for (u64 m = d; m <= N; m += d) ++tau[m];
    for (u64 n = 1; n <= N; ++n) {
      CHECK(tabs.lambda.at(n) >= 0.0);
      CHECK(tabs.lambda.at(n) <= double(tau[n]));
    }
  }
}

TEST_CASE("lambda' dominates Lambda pointwise") {
  const u64 N = 100'000;
  ArithTable Lam = von_mangoldt_table(1, N);
  for (i64 D : {-4, 5}) {
    RealCharacter chi = RealCharacter::from_discriminant(D);
    ArithTable lamp = build_lambda_prime(chi, N);
    for (u64 n = 1; n <= N; ++n)
      CHECK(lamp.at(n) - Lam.at(n) >= -1e-9);
  }
}

TEST_CASE("identity (lambda * Lambda) = lambda' at N = 10^5") {
  for (i64 D : {-4, 5, -3}) {
    RealCharacter chi = RealCharacter::from_discriminant(D);
    IdentityReport rep = verify_lambda_identity(chi, 100'000);
    CHECK(rep.max_abs_deviation <= 1e-6);
  }
}

TEST_CASE("identity against a double-divisor-sum oracle on random n") {
  RealCharacter chi = RealCharacter::from_discriminant(-3);
  ConvolutionTables tabs = build_convolutions(chi, 20'000);
  std::mt19937_64 rng(5);
  ArithTable Lam = von_mangoldt_table(1, 20'000);
  for (int i = 0; i < 200; ++i) {
    u64 n = 2 + rng() % 19'999;
    double conv = 0.0;
    for (u64 d = 1; d <= n; ++d)
      if (n % d == 0) conv += tabs.lambda.at(d) * Lam.at(n / d);
    CHECK(conv == doctest::Approx(tabs.lambda_prime.at(n)).epsilon(1e-9));
  }
}

TEST_CASE("multiplicativity exact checks") {
  RealCharacter chi4 = RealCharacter::from_discriminant(-4);
  CHECK(lambda_at(chi4, factorize(45)) == 2);  // lambda(5) lambda(9) = 2*1

  std::vector<std::pair<u64, u64>> pairs;
  pairs.push_back({1, 77});
  pairs.push_back({5, 9});
  std::mt19937_64 rng(17);
  while (pairs.size() < 10'000) {
    u64 m = 1 + rng() % 1'000'000;
    u64 n = 1 + rng() % 1'000'000;
    if (std::gcd(m, n) == 1) pairs.push_back({m, n});
  }
  MultiplicativityReport rep = multiplicativity_check(chi4, pairs);
  CHECK(rep.checked == pairs.size());
  CHECK(rep.failures == 0);

  std::vector<std::pair<u64, u64>> bad{{6, 10}};
  CHECK_THROWS_AS(multiplicativity_check(chi4, bad), std::invalid_argument);
}

TEST_CASE("partial sums of lambda track L(1,chi) N") {
  // sum_{n<=N} lambda(n) = sum_{d<=N} chi(d) floor(N/d), computed directly.
  const u64 N = 10'000'000;
  for (i64 D : {-4, 5}) {
    RealCharacter chi = RealCharacter::from_discriminant(D);
    double total = 0.0;
    for (u64 d = 1; d <= N; ++d) {
      int c = chi.chi(d);
      if (c) total += double(c) * double(N / d);
    }
    double L = l_one_exact(chi);
    CHECK(total / (L * double(N)) > 0.9);
    CHECK(total / (L * double(N)) < 1.1);
  }
}

TEST_CASE("table sum cross-check at N = 10^6") {
  RealCharacter chi = RealCharacter::from_discriminant(5);
  ArithTable lam = build_lambda(chi, 1'000'000);
  double table_sum = 0.0;
  for (u64 n = 1; n <= 1'000'000; ++n) table_sum += lam.at(n);
  double hyperbola = 0.0;
  for (u64 d = 1; d <= 1'000'000; ++d) {
    int c = chi.chi(d);
    if (c) hyperbola += double(c) * double(1'000'000 / d);
  }
  CHECK(table_sum == hyperbola);  // both are exact integer counts
}

}  // TEST_SUITE
