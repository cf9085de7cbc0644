#pragma once

#include <cstdint>
#include <vector>

#include "charsieve/numeric.hpp"

namespace charsieve {

// Kronecker symbol (D|n) with the standard conventions; (D|0) is 1 iff |D|=1.
int kronecker(i64 D, i64 n);

// D = 1 mod 4 squarefree, or D = 4m with m = 2,3 mod 4 squarefree.
bool is_fundamental_discriminant(i64 D);

// Real primitive character chi_D(n) = (D|n), periodic mod q = |D|.
struct RealCharacter {
  i64 discriminant = 1;
  u64 modulus = 1;
  std::vector<std::int8_t> period;  // chi(r) for r in [0, q)
  double l_one_estimate = 0.0;      // filled by l_one / l_one_exact
  bool has_l_one = false;

  int chi(u64 n) const { return period[n % modulus]; }

  static RealCharacter from_discriminant(i64 D);
};

struct LOneEstimate {
  double estimate;    // sum_{n<=cutoff} chi(n)/n
  double tail_bound;  // q log q / cutoff (Polya-Vinogradov + partial summation)
};

// Direct partial sum; pre: cutoff >= q^2.
LOneEstimate l_one(RealCharacter& chi, u64 cutoff);

// One period of chi(a)/a plus the exact digamma tail:
//   L(1,chi) = sum_{a=1}^{q} chi(a)/a - (1/q) sum_{a=1}^{q} chi(a) psi(1+a/q).
// Accurate to ~1e-12; O(q) work, used by the scanner.
double l_one_exact(const RealCharacter& chi);

struct CharacterScore {
  i64 discriminant;
  u64 modulus;
  double l_one;
  double tail_bound;
  double score;  // l_one * log(modulus)
};

// The `count` fundamental discriminants with 1 < |D| <= q_max of smallest
// exceptionality score L(1,chi_D) * log|D|, ascending.
std::vector<CharacterScore> scan_exceptional(u64 q_max, std::size_t count);

}  // namespace charsieve
