#pragma once

#include <mutex>
#include <unordered_map>
#include <vector>

#include "charsieve/arith.hpp"

namespace charsieve {

struct RootSet {
  u64 modulus = 1;
  std::vector<u64> roots;  // sorted nu in [0, d) with nu^2 + 1 = 0 (mod d)
};

// Exact rational with 128-bit numerator/denominator, always reduced, den > 0.
struct Rational {
  i128 num = 0;
  i128 den = 1;

  Rational() = default;
  Rational(i128 n, i128 d);
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double to_double() const;
};

RootSet roots_minus_one(u64 d);

u64 rho(u64 d);  // |roots_minus_one(d)|, via multiplicativity
u64 rho(const FactoredInteger& f);

// Sieve density g(p^k) = [p not| q] rho(p^k)/p^k * (1+1/p)^{-1}, multiplicative.
Rational g_value(u64 d, u64 q);
Rational g_value(const FactoredInteger& f, u64 q);
double g_double(u64 d, u64 q);

// Memoised g for one modulus q; concurrent readers safe.
class DensityG {
 public:
  explicit DensityG(u64 q) : q_(q) {}
  Rational operator()(u64 d) const;
  double at(u64 d) const { return (*this)(d).to_double(); }
  u64 modulus() const { return q_; }

 private:
  u64 q_;
  mutable std::mutex mu_;
  mutable std::unordered_map<u64, Rational> memo_;
};

// sum_{d<=D} alpha(d) g(d), doubles, compensated.
double g_sum_weighted(const std::function<double(u64)>& alpha, u64 D, u64 q);

}  // namespace charsieve
