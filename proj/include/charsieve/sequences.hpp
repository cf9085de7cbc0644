#pragma once

#include <vector>

#include "charsieve/arith.hpp"

namespace charsieve {

// Sparse map n -> value over the dyadic window (x, 2x], keys coprime to q.
// a_n counts coprime representations n = a^2 + b^(2k); b_n weighs two-square
// representations with b^(-1+1/k)/k.
struct SparseSequence {
  u64 x = 1;
  int k = 4;
  u64 q = 1;
  std::vector<u64> keys;  // sorted
  std::vector<double> values;

  double at(u64 n) const;
  double total() const;  // compensated sum of values
  std::size_t size() const { return keys.size(); }
};

SparseSequence build_a(u64 x, int k, u64 q);
SparseSequence build_b(u64 x, int k, u64 q);

// Streaming aggregates over (x, 2x] without materialising the map.
double b_total_streaming(u64 x, int k, u64 q);        // X = sum b_n
double b_lambda_sum_streaming(u64 x, int k, u64 q);   // sum b_n Lambda(n)

// sum a_n Lambda(n) over the sparse keys (factorize per key).
double a_lambda_sum(const SparseSequence& a);

// kappa_n = int_0^1 sqrt(1 - t^n) dt, adaptive quadrature, abs error <= tol.
double kappa(int n, double tol);

// (4/pi) kappa_{2k} x^{1/2 + 1/(2k)}.
double main_term(double x, int k);
// main_term(2x) - main_term(x): the expected mass of a dyadic window.
double main_term_dyadic(double x, int k);

}  // namespace charsieve
