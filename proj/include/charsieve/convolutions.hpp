#pragma once

#include <span>
#include <utility>

#include "charsieve/arith.hpp"
#include "charsieve/characters.hpp"

namespace charsieve {

// lambda = 1 * chi (exact integers), lambda' = chi * log (doubles), on [1, N].
struct ConvolutionTables {
  RealCharacter chi;
  u64 N = 0;
  ArithTable lambda;
  ArithTable lambda_prime;
};

ArithTable build_lambda(const RealCharacter& chi, u64 N);
ArithTable build_lambda_prime(const RealCharacter& chi, u64 N);
ConvolutionTables build_convolutions(const RealCharacter& chi, u64 N);

// Pointwise evaluation from a factorization (lambda is multiplicative;
// lambda' by divisor enumeration).  Independent of the sieve passes.
i64 lambda_at(const RealCharacter& chi, const FactoredInteger& f);
double lambda_prime_at(const RealCharacter& chi, const FactoredInteger& f);

struct IdentityReport {
  u64 N = 0;
  double max_abs_deviation = 0.0;
  u64 argmax_n = 1;
};

// max_{n<=N} |(lambda * Lambda)(n) - lambda'(n)|, with the convolution side
// evaluated through factorizations (sum of lambda(n/p^j) log p).
IdentityReport verify_lambda_identity(const RealCharacter& chi, u64 N);
IdentityReport verify_lambda_identity(const ConvolutionTables& tables);

struct MultiplicativityReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
};

// Asserts lambda(m1 m2) = lambda(m1) lambda(m2) exactly for coprime pairs.
MultiplicativityReport multiplicativity_check(
    const RealCharacter& chi, std::span<const std::pair<u64, u64>> pairs);

}  // namespace charsieve
