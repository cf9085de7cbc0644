#pragma once

#include <map>
#include <string>

#include "charsieve/characters.hpp"
#include "charsieve/sequences.hpp"

namespace charsieve {

// Tunables of the decomposition.  Cuts at x^(1/3-2gamma) and x^(1/3+gamma);
// gamma defaults to 1/24 + epsilon; z = round(x^(1/(log log x)^2)), clamped
// to >= 7 (the identity is exact for any z, so experiments may override).
struct SieveParams {
  u64 x = 1000;
  int k = 4;
  double epsilon = 0.02;
  double gamma = 1.0 / 24 + 0.02;
  u64 z = 7;
  u64 D1 = 2;
  RealCharacter chi;
};

SieveParams default_params(u64 x, int k, const RealCharacter& chi, double epsilon);

struct DecompositionReport {
  double s_direct = 0;  // sum a_n Lambda(n) over rough n
  double s1 = 0;        // sum a_n lambda'(n) over rough n
  double s2 = 0;        // s21 + s22 + s23
  double s21 = 0, s22 = 0, s221 = 0, s222 = 0, s23 = 0;
  double main_term_b = 0;  // sum b_n Lambda(n) over the window (streaming)
  double identity_residual = 0;  // |s_direct - (s1 - s2)|
  std::map<std::string, double> ratios;
};

double s_direct(const SieveParams& params, const SparseSequence& a);
double s1(const SieveParams& params, const SparseSequence& a);

struct S2Parts {
  double s21 = 0, s221 = 0, s222 = 0, s23 = 0;
  double total() const { return s21 + s221 + s222 + s23; }
};
S2Parts s2_parts(const SieveParams& params, const SparseSequence& a);

// Builds a, runs every sub-sum, checks the identity, fills ratios.
DecompositionReport decompose(const SieveParams& params);

// D(gamma) = 2 log((1+3gamma)/(1-6gamma)); singular at gamma = 1/6.
double d_gamma(double gamma);

// (1+sqrt e)/(1+2 sqrt e) closed form, and the bisection root of
// 1 - D(2/3 - alpha) = 0; the two agree to 1e-9.
double threshold_alpha();
double threshold_alpha_bisection();

struct LinearSieveReport {
  double bound_main = 0;       // X sum_k Lambda(k) g(k) 2 e^gamma1 prod(1-g(p))
  double bound_remainder = 0;  // sum_k Lambda(k) sum_{d<=D_k sqfree} |R(d,k)|
  double bound_total = 0;
  double actual_s222 = 0;
  std::size_t k_count = 0;
};

// Evaluates the linear-sieve upper bound for the middle-range prime sum and
// the measured S222 it must dominate.  X = sum b_n over the window.
LinearSieveReport s222_upper_linear_sieve(const SieveParams& params,
                                          const SparseSequence& a, double X);

struct MertensReport {
  u64 z = 0;
  u64 q = 0;
  double lhs = 0;            // prod_{p<=z} (1 - g(p))
  double mertens = 0;        // prod_{p<=z} (1 - 1/p)
  double gq = 0;             // prod_{p|q} (1 - rho(p)/p)^{-1}
  double constant_gq = 0;    // G_q zeta(2)/L(1,chi_4)
  double constant_exact = 0; // exact local constant (see notes in source)
  double ratio_gq = 0;       // lhs / (constant_gq * mertens)
  double ratio_exact = 0;    // lhs / (constant_exact * mertens)
  double ratio_log_form = 0; // lhs / (constant_exact / (e^gamma1 log z))
};
MertensReport mertens_products(u64 z, u64 q);

struct SmoothCountReport {
  u64 y = 0, z = 0;
  u64 count = 0;   // z-smooth n in (y, 2y]
  double u = 0;    // log y / log z
  double bound = 0;  // y e^{-u/2}
  double ratio = 0;
};
SmoothCountReport smooth_count_check(u64 y, u64 z);

struct RoughMomentReport {
  u64 M = 0, Z = 0;
  int K = 0;
  double sum = 0;  // sum_{m ~ M} tau(m)^K [spf(m) > Z]
  double ratio = 0;  // sum / M
};
RoughMomentReport rough_divisor_moment(u64 M, u64 Z, int K);

struct UpperBoundReport {
  double m21 = 0, m23 = 0;      // b-side sums with gamma = 0 cuts
  double b_s1 = 0, b_s_direct = 0;
  double a_lambda_total = 0;    // sum a_n Lambda(n), all n in the window
  double a_s1 = 0;              // S1 on the a-side
  double identity_residual_b = 0;
};
UpperBoundReport upper_bound_variant(const SieveParams& params);

}  // namespace charsieve
