#pragma once

#include <complex>
#include <span>
#include <vector>

#include "charsieve/characters.hpp"
#include "charsieve/sequences.hpp"

namespace charsieve {

struct RemainderRecord {
  u64 d = 1;
  double raw_sum = 0;   // sum_{n ~ x, d|n} a_n
  double expected = 0;  // g(d) X
  double r_d = 0;       // raw_sum - expected
  double twisted = 0;   // sum_{n ~ x/d} a_{dn} chi(n)
};

// One record per d <= D; raw and twisted sums by walking multiples of d
// through a dense view of the window.
std::vector<RemainderRecord> remainder_table(const SparseSequence& a,
                                             const RealCharacter& chi,
                                             double X, u64 D);

// sum_{d <= x^theta, squarefree} |r_d|.
double aggregate_remainder(const std::vector<RemainderRecord>& records,
                           double theta, u64 x);

struct ExponentScanRow {
  double theta = 0;
  double aggregate = 0;
  double normalized = 0;  // aggregate / X
};
std::vector<ExponentScanRow> exponent_scan(
    const std::vector<RemainderRecord>& records, u64 x, double X,
    const std::vector<double>& theta_grid);

// Fixed C-infinity reference bump: c exp(-1/(1-t^2)) on (-1,1), ||psi||_1 = 1.
double bump(double t);

struct SmoothWindow {
  double M = 1000;  // width; psi_M(u) = bump(u / M)
  double m0 = 0;    // centre
};

struct PoissonReport {
  double lhs = 0;       // sum_{m = a (d)} psi_M(m - m0)
  double rhs = 0;       // truncated Fourier side, H = M^eps d / M
  double deviation = 0;
  int h_range = 0;
};
PoissonReport poisson_check(const SmoothWindow& window, u64 d, u64 a, double eps);

struct LargeSieveReport {
  double max_ratio = 0;          // |sum| on the left, as stated
  double max_ratio_squared = 0;  // |sum|^2 variant, recorded alongside
  int trials = 0;
};
// LHS = sum_{d ~ D, (d,q)=1} sum_{nu^2+1=0(d)} |sum_{n<=N} alpha_n e_d(nu n qbar)|
// against (Dq + N) sum |alpha_n|^2, max over random coefficient vectors.
LargeSieveReport large_sieve_ratio(u64 D, u64 q, u64 N, int trials, u64 seed);

// Same ratios for one explicit coefficient vector (alpha[0] unused).
LargeSieveReport large_sieve_ratio_alpha(u64 D, u64 q,
                                         std::span<const std::complex<double>> alpha);

struct WeilReport {
  double max_ratio = 0;  // |sum_m chi(a m^2 + b)| / (gcd(b,q)^1/2 q^1/2)
  int trials = 0;
};
WeilReport weil_ratio(u64 q, int trials, u64 seed);

// sum_{m mod q} chi(a m^2 + b) for the quadratic character mod prime q.
i64 weil_character_sum(u64 q, u64 a, u64 b);

struct ExceptionalSumsReport {
  double sum_chi_g = 0;     // sum_{n<=x} chi(n) g(n)
  double sum_lambda_g = 0;  // sum_{z<n<=x} lambda(n) g(n)
  double l_one = 0;
  double norm_chi = 0;      // sum_chi_g / L(1,chi)
  double norm_lambda = 0;   // sum_lambda_g / (L(1,chi) log^2 x)
};
ExceptionalSumsReport exceptional_sums(const RealCharacter& chi, u64 x, u64 z);

}  // namespace charsieve
