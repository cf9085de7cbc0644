#include <doctest.h>

#include <numeric>
#include <random>
#include <thread>

#include "charsieve/quadratic_roots.hpp"

using namespace charsieve;

namespace {

std::vector<u64> brute_roots(u64 d) {
  std::vector<u64> out;
  for (u64 v = 0; v < d; ++v)
    if ((v * v + 1) % d == 0) out.push_back(v);
  if (d == 1) out = {0};
  return out;
}

}  // namespace

TEST_SUITE("quadratic_roots") {

TEST_CASE("roots examples") {
  CHECK(roots_minus_one(5).roots == std::vector<u64>{2, 3});
  CHECK(roots_minus_one(3).roots.empty());
  CHECK(roots_minus_one(65).roots.size() == 4);
  CHECK(roots_minus_one(65).roots == brute_roots(65));
  CHECK(roots_minus_one(1).roots == std::vector<u64>{0});
  CHECK(roots_minus_one(2).roots == std::vector<u64>{1});
  CHECK(roots_minus_one(4).roots.empty());
}

TEST_CASE("roots match brute force for all d <= 10^4") {
  for (u64 d = 1; d <= 10'000; ++d) {
    RootSet rs = roots_minus_one(d);
    CHECK(rs.roots == brute_roots(d));
    CHECK(rs.roots.size() == rho(d));
  }
}

TEST_CASE("rho small values and chi_4 formula") {
  CHECK(rho(1) == 1);
  CHECK(rho(2) == 1);
  CHECK(rho(4) == 0);
  // rho(p) = 1 + chi_4(p) for all primes p <= 10^4.
  for (u64 p : sieve_primes(10'000).primes) {
    u64 expected = (p == 2) ? 1 : (p % 4 == 1 ? 2 : 0);
    CHECK(rho(p) == expected);
  }
}

TEST_CASE("rho is multiplicative on coprime pairs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5'000; ++i) {
    u64 m = 1 + rng() % 10'000;
    u64 n = 1 + rng() % 10'000;
    if (std::gcd(m, n) != 1) continue;
    CHECK(rho(m * n) == rho(m) * rho(n));
  }
}

TEST_CASE("g_value examples") {
  CHECK(g_value(1, 13) == Rational(1, 1));
  CHECK(g_value(5, 13) == Rational(1, 3));  // (2/5)(5/6)
  CHECK(g_value(5, 5) == Rational(0, 1));
  CHECK(g_value(2, 13) == Rational(1, 3));  // (1/2)(2/3)
  CHECK(g_value(3, 13) == Rational(0, 1));
  CHECK(g_value(4, 13) == Rational(0, 1));
  CHECK(g_value(25, 13) == Rational(1, 15));  // 2*5/(25*6)
}

TEST_CASE("g envelope g(d) <= tau(d)/d") {
  for (u64 d = 1; d <= 100'000; ++d) {
    Rational g = g_value(d, 1);
    u64 tau = divisor_count(d);
    // num/den <= tau/d  <=>  num*d <= tau*den (den > 0).
    CHECK(g.num * i128(d) <= i128(tau) * g.den);
    CHECK(g.num >= 0);
  }
}

TEST_CASE("g_sum_weighted term-by-term") {
  auto ones = [](u64) { return 1.0; };
  CHECK(g_sum_weighted(ones, 1, 13) == doctest::Approx(1.0));
  // 1 + g(2) + g(3) + g(4) + g(5) = 1 + 1/3 + 0 + 0 + 1/3.
  CHECK(g_sum_weighted(ones, 5, 13) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  // Against DensityG evaluation.
  DensityG g(7);
  double direct = 0.0;
  for (u64 d = 1; d <= 2000; ++d) direct += g.at(d);
  CHECK(g_sum_weighted(ones, 2000, 7) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("average order of rho tracks D L(1,chi_4)/zeta(2)") {
  const u64 D = 1'000'000;
  // Direct summation via the multiplicative recursion on smallest factors.
  std::vector<u32> spf(D + 1, 0);
  for (u64 i = 2; i <= D; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= D; j += i)
        if (spf[j] == 0) spf[j] = u32(i);
  std::vector<u32> r(D + 1, 0);
  r[1] = 1;
  double sum = 1.0;
  for (u64 d = 2; d <= D; ++d) {
    u64 p = spf[d], rest = d;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    u32 rp = (p == 2) ? (e == 1 ? 1 : 0) : (p % 4 == 3 ? 0 : 2);
    r[d] = r[rest] * rp;
    sum += r[d];
  }
  double expected = double(D) * (kPi / 4.0) / kZeta2;
  CHECK(sum / expected > 0.8);
  CHECK(sum / expected < 1.2);
  // And rho() agrees with the sieve fill on a sample.
  for (u64 d = 1; d <= D; d += 9973) CHECK(rho(d) == r[d]);
}

TEST_CASE("DensityG concurrent readers") {
  DensityG g(5);
  std::vector<std::thread> pool;
  std::vector<double> out(4, 0.0);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      double acc = 0.0;
      for (u64 d = 1; d <= 2000; ++d) acc += g.at(d);
      out[t] = acc;
    });
  for (auto& th : pool) th.join();
  for (int t = 1; t < 4; ++t) CHECK(out[t] == out[0]);
}

}  // TEST_SUITE
