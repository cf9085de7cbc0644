#include "charsieve/sieve_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "charsieve/convolutions.hpp"
#include "charsieve/quadratic_roots.hpp"

namespace charsieve {

namespace {

constexpr u64 kDenseWindowCap = 50'000'000;

i64 lambda_pp(int chi_p, int e) {
  if (e == 0) return 1;
  if (chi_p == 1) return e + 1;
  if (chi_p == 0) return 1;
  return (e % 2 == 0) ? 1 : 0;
}

struct DecompParts {
  double s_direct = 0, s1 = 0;
  double s21 = 0, s221 = 0, s222 = 0, s23 = 0;
};

// The exact expansion behind the decomposition: for every key n with
// gcd(n, P(z)) = 1,
//   lambda'(n) - Lambda(n) = sum_{n = k m, m > 1} Lambda(k) lambda(m),
// where k runs over the prime-power parts p^j of n.  Each term is bucketed
// by the size of k against the cuts x^(1/3-2gamma) < x^(1/3+gamma), and the
// middle range splits on whether m is prime.
DecompParts decompose_sequence(const SparseSequence& seq, const SieveParams& P) {
  const double cut_lo = std::pow(double(P.x), 1.0 / 3.0 - 2.0 * P.gamma);
  const double cut_hi = std::pow(double(P.x), 1.0 / 3.0 + P.gamma);
  const u64 z = P.z;
  const RealCharacter& chi = P.chi;

  KahanSum s_direct, s1, s21, s221, s222, s23;
  std::vector<int> chi_p;
  for (std::size_t i = 0; i < seq.keys.size(); ++i) {
    const u64 n = seq.keys[i];
    const double a_n = seq.values[i];
    const FactoredInteger f = factorize(n);
    if (f.factors.empty() || f.factors[0].p <= z) continue;  // not rough

    if (f.factors.size() == 1) s_direct.add(a_n * std::log(double(f.factors[0].p)));
    s1.add(a_n * lambda_prime_at(chi, f));

    chi_p.clear();
    int omega_n = 0;
    for (const auto& [p, e] : f.factors) {
      chi_p.push_back(chi.chi(p));
      omega_n += e;
    }
    for (std::size_t fi = 0; fi < f.factors.size(); ++fi) {
      const u64 p = f.factors[fi].p;
      const int e = f.factors[fi].e;
      const double lp = std::log(double(p));
      u64 kpp = 1;
      for (int j = 1; j <= e; ++j) {
        kpp *= p;
        if (kpp == n) break;  // m = 1 excluded
        i64 lam_m = 1;
        for (std::size_t fj = 0; fj < f.factors.size(); ++fj) {
          int em = f.factors[fj].e - (fj == fi ? j : 0);
          lam_m *= lambda_pp(chi_p[fj], em);
          if (lam_m == 0) break;
        }
        if (lam_m == 0) continue;
        const double w = a_n * lp * double(lam_m);
        const double kd = double(kpp);
        if (kd > cut_hi) {
          s21.add(w);
        } else if (kd > cut_lo) {
          if (omega_n - j == 1)
            s222.add(w);
          else
            s221.add(w);
        } else {
          s23.add(w);
        }
      }
    }
  }
  DecompParts parts;
  parts.s_direct = s_direct.value();
  parts.s1 = s1.value();
  parts.s21 = s21.value();
  parts.s221 = s221.value();
  parts.s222 = s222.value();
  parts.s23 = s23.value();
  return parts;
}

void validate(const SieveParams& P, bool strict_gamma) {
  if (P.x < 2) throw std::domain_error("sieve: x too small");
  if (P.z < 2) throw std::domain_error("sieve: z >= 2");
  if (P.gamma < 0 || P.gamma >= 1.0 / 6.0 || (strict_gamma && P.gamma == 0.0))
    throw std::domain_error("sieve: gamma out of [0, 1/6)");
}

std::vector<double> dense_window(const SparseSequence& seq) {
  if (seq.x > kDenseWindowCap)
    throw std::length_error("dense window: x too large");
  std::vector<double> dense(seq.x, 0.0);
  for (std::size_t i = 0; i < seq.keys.size(); ++i)
    dense[seq.keys[i] - seq.x - 1] = seq.values[i];
  return dense;
}

}  // namespace

SieveParams default_params(u64 x, int k, const RealCharacter& chi, double epsilon) {
  if (x < 1000) throw std::domain_error("default_params: x >= 1000");
  if (epsilon <= 0 || epsilon >= 0.1)
    throw std::domain_error("default_params: epsilon in (0, 0.1)");
  SieveParams P;
  P.x = x;
  P.k = k;
  P.epsilon = epsilon;
  P.gamma = 1.0 / 24.0 + epsilon;
  double loglog = std::log(std::log(double(x)));
  double zf = std::pow(double(x), 1.0 / (loglog * loglog));
  P.z = std::max<u64>(7, u64(std::llround(zf)));
  P.D1 = std::max<u64>(2, u64(std::llround(std::pow(double(x), epsilon))));
  P.chi = chi;
  return P;
}

double s_direct(const SieveParams& params, const SparseSequence& a) {
  validate(params, false);
  KahanSum s;
  for (std::size_t i = 0; i < a.keys.size(); ++i) {
    FactoredInteger f = factorize(a.keys[i]);
    if (f.factors.size() == 1 && f.factors[0].p > params.z)
      s.add(a.values[i] * std::log(double(f.factors[0].p)));
  }
  return s.value();
}

double s1(const SieveParams& params, const SparseSequence& a) {
  validate(params, false);
  KahanSum s;
  for (std::size_t i = 0; i < a.keys.size(); ++i) {
    FactoredInteger f = factorize(a.keys[i]);
    if (!f.factors.empty() && f.factors[0].p > params.z)
      s.add(a.values[i] * lambda_prime_at(params.chi, f));
  }
  return s.value();
}

S2Parts s2_parts(const SieveParams& params, const SparseSequence& a) {
  validate(params, false);
  DecompParts p = decompose_sequence(a, params);
  S2Parts out;
  out.s21 = p.s21;
  out.s221 = p.s221;
  out.s222 = p.s222;
  out.s23 = p.s23;
  return out;
}

DecompositionReport decompose(const SieveParams& params) {
  validate(params, true);
  SparseSequence a = build_a(params.x, params.k, params.chi.modulus);
  DecompParts p = decompose_sequence(a, params);

  DecompositionReport rep;
  rep.s_direct = p.s_direct;
  rep.s1 = p.s1;
  rep.s21 = p.s21;
  rep.s221 = p.s221;
  rep.s222 = p.s222;
  rep.s22 = p.s221 + p.s222;
  rep.s23 = p.s23;
  rep.s2 = rep.s21 + rep.s22 + rep.s23;
  rep.main_term_b = b_lambda_sum_streaming(params.x, params.k, params.chi.modulus);
  rep.identity_residual = std::abs(rep.s_direct - (rep.s1 - rep.s2));

  auto ratio = [](double num, double den) { return den != 0.0 ? num / den : 0.0; };
  rep.ratios["identity_residual_rel"] = ratio(rep.identity_residual, std::abs(rep.s1));
  rep.ratios["s_direct_over_main_b"] = ratio(rep.s_direct, rep.main_term_b);
  rep.ratios["s1_over_main_b"] = ratio(rep.s1, rep.main_term_b);
  rep.ratios["s2_over_main_b"] = ratio(rep.s2, rep.main_term_b);
  rep.ratios["s222_over_main_b"] = ratio(rep.s222, rep.main_term_b);
  rep.ratios["main_b_over_dyadic_main_term"] =
      ratio(rep.main_term_b, main_term_dyadic(double(params.x), params.k));
  rep.ratios["d_gamma"] = d_gamma(params.gamma);
  rep.ratios["lower_bound_constant"] = 1.0 - d_gamma(params.gamma);
  return rep;
}

double d_gamma(double gamma) {
  if (gamma < 0.0 || gamma >= 1.0 / 6.0)
    throw std::domain_error("d_gamma: gamma in [0, 1/6)");
  return 2.0 * std::log((1.0 + 3.0 * gamma) / (1.0 - 6.0 * gamma));
}

double threshold_alpha() {
  double se = std::exp(0.5);
  return (1.0 + se) / (1.0 + 2.0 * se);
}

double threshold_alpha_bisection() {
  // 1 - D(2/3 - alpha) is increasing in alpha; bracket and bisect.
  double lo = 0.51, hi = 2.0 / 3.0 - 1e-12;
  auto f = [](double alpha) { return 1.0 - d_gamma(2.0 / 3.0 - alpha); };
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

LinearSieveReport s222_upper_linear_sieve(const SieveParams& params,
                                          const SparseSequence& a, double X) {
  validate(params, false);
  const u64 x = params.x;
  const u64 q = params.chi.modulus;
  const double cut_lo = std::pow(double(x), 1.0 / 3.0 - 2.0 * params.gamma);
  const double cut_hi = std::pow(double(x), 1.0 / 3.0 + params.gamma);
  const double level = std::pow(double(x), 2.0 / 3.0 - params.gamma);

  LinearSieveReport rep;
  rep.actual_s222 = s2_parts(params, a).s222;

  if (cut_lo >= cut_hi) return rep;  // empty middle range

  const std::vector<double> dense = dense_window(a);

  // Middle-range sieve moduli k = p^j with p > z.
  std::vector<u64> ks;
  for_primes_in(params.z + 1, u64(cut_hi), [&](u64 p) {
    u128 pj = p;
    while (pj <= u64(cut_hi)) {
      if (double(u64(pj)) > cut_lo) ks.push_back(u64(pj));
      pj *= p;
    }
  });
  std::sort(ks.begin(), ks.end());

  if (ks.empty()) return rep;
  const u64 maxD = std::max<u64>(2, u64(level / double(ks.front())) + 1);

  // Squarefree flags and V(D) prefix products over primes <= maxD.
  std::vector<std::uint8_t> sqfree(maxD + 1, 1);
  for (u64 p = 2; p * p <= maxD; ++p)
    for (u64 m = p * p; m <= maxD; m += p * p) sqfree[m] = 0;
  std::vector<u64> small_primes;
  for_primes_in(2, maxD, [&](u64 p) { small_primes.push_back(p); });
  std::vector<double> vprefix(small_primes.size() + 1, 1.0);
  for (std::size_t i = 0; i < small_primes.size(); ++i)
    vprefix[i + 1] = vprefix[i] * (1.0 - g_double(small_primes[i], q));

  DensityG g(q);
  KahanSum bound_main, bound_rem;
  for (u64 k : ks) {
    FactoredInteger fk = factorize(k);
    const u64 p = fk.factors[0].p;
    const double lam_k = std::log(double(p));
    const double gk = g(k).to_double();
    const double Dk = level / double(k);

    // V(Dk) = prod_{p' <= Dk} (1 - g(p')).
    std::size_t idx = std::size_t(
        std::upper_bound(small_primes.begin(), small_primes.end(), u64(Dk)) -
        small_primes.begin());
    const double V = vprefix[idx];
    bound_main.add(lam_k * X * gk * 2.0 * std::exp(kEulerGamma) * V);

    // Remainders R(d,k) over squarefree d <= Dk, (d,k) = 1.
    for (u64 d = 1; double(d) <= Dk; ++d) {
      if (!sqfree[d] || d % p == 0) continue;
      KahanSum raw;
      const u64 dk = d * k;
      for (u64 m = (x / dk + 1) * dk; m <= 2 * x; m += dk) {
        double v = dense[m - x - 1];
        if (v != 0.0) raw.add(v * (1.0 + params.chi.chi(m / k)));
      }
      double R = raw.value() - g(d).to_double() * gk * X;
      bound_rem.add(lam_k * std::abs(R));
    }
  }
  rep.bound_main = bound_main.value();
  rep.bound_remainder = bound_rem.value();
  rep.bound_total = rep.bound_main + rep.bound_remainder;
  rep.k_count = ks.size();
  return rep;
}

MertensReport mertens_products(u64 z, u64 q) {
  if (z < 2 || z > 100'000'000) throw std::length_error("mertens_products: z out of [2, 10^8]");
  MertensReport rep;
  rep.z = z;
  rep.q = q;

  KahanSum lhs_log, mertens_log;
  for_primes_in(2, z, [&](u64 p) {
    mertens_log.add(std::log1p(-1.0 / double(p)));
    double gp;
    if (q % p == 0)
      gp = 0.0;
    else if (p == 2)
      gp = 1.0 / 3.0;
    else if (p % 4 == 1)
      gp = 2.0 / double(p + 1);
    else
      gp = 0.0;
    if (gp != 0.0) lhs_log.add(std::log1p(-gp));
  });
  rep.lhs = std::exp(lhs_log.value());
  rep.mertens = std::exp(mertens_log.value());

  const double l_chi4 = kPi / 4.0;
  double gq = 1.0, local = 1.0;
  for (const auto& [p, e] : factorize(q).factors) {
    double rho_p = (p == 2) ? 1.0 : (p % 4 == 1 ? 2.0 : 0.0);
    gq /= (1.0 - rho_p / double(p));
    double chi4_p = (p == 2) ? 0.0 : (p % 4 == 1 ? 1.0 : -1.0);
    local *= (1.0 + 1.0 / double(p)) / (1.0 - chi4_p / double(p));
  }
  rep.gq = gq;
  rep.constant_gq = gq * kZeta2 / l_chi4;
  rep.constant_exact = local * kZeta2 / l_chi4;
  rep.ratio_gq = rep.lhs / (rep.constant_gq * rep.mertens);
  rep.ratio_exact = rep.lhs / (rep.constant_exact * rep.mertens);
  rep.ratio_log_form =
      rep.lhs * std::exp(kEulerGamma) * std::log(double(z)) / rep.constant_exact;
  return rep;
}

SmoothCountReport smooth_count_check(u64 y, u64 z) {
  if (y < 2 || y > 1'000'000'000) throw std::length_error("smooth_count: y out of [2, 10^9]");
  if (z < 2) throw std::domain_error("smooth_count: z >= 2");
  SmoothCountReport rep;
  rep.y = y;
  rep.z = z;

  const u64 lo = y + 1, hi = 2 * y;
  const u64 root = isqrt(hi);
  std::vector<u64> base;
  for_primes_in(2, std::min(z, root), [&](u64 p) { base.push_back(p); });

  const u64 seg_len = 1u << 22;
  u64 count = 0;
  std::vector<u64> rem;
  for (u64 left = lo; left <= hi; left += seg_len) {
    const u64 right = std::min(hi, left + seg_len - 1);
    rem.resize(right - left + 1);
    for (u64 n = left; n <= right; ++n) rem[n - left] = n;
    for (u64 p : base) {
      for (u64 m = (left + p - 1) / p * p; m <= right; m += p) {
        u64& r = rem[m - left];
        while (r % p == 0) r /= p;
      }
    }
    // Smooth iff the unfactored part is 1 or a single prime <= z.
    for (u64 i = 0; i <= right - left; ++i)
      if (rem[i] <= z) ++count;
  }
  rep.count = count;
  rep.u = std::log(double(y)) / std::log(double(z));
  rep.bound = double(y) * std::exp(-rep.u / 2.0);
  rep.ratio = double(count) / rep.bound;
  return rep;
}

RoughMomentReport rough_divisor_moment(u64 M, u64 Z, int K) {
  if (M < 2 || M > 1'000'000'000) throw std::length_error("rough_moment: M out of [2, 10^9]");
  if (K < 0 || K > 8) throw std::invalid_argument("rough_moment: K in [0, 8]");
  RoughMomentReport rep;
  rep.M = M;
  rep.Z = Z;
  rep.K = K;

  const u64 lo = M + 1, hi = 2 * M;
  const u64 root = isqrt(hi);
  std::vector<u64> base;
  for_primes_in(2, root, [&](u64 p) { base.push_back(p); });

  const u64 seg_len = 1u << 22;
  KahanSum sum;
  std::vector<u64> rem;
  std::vector<u32> tau;
  std::vector<std::uint8_t> rough;
  for (u64 left = lo; left <= hi; left += seg_len) {
    const u64 right = std::min(hi, left + seg_len - 1);
    const u64 len = right - left + 1;
    rem.assign(len, 0);
    tau.assign(len, 1);
    rough.assign(len, 1);
    for (u64 n = left; n <= right; ++n) rem[n - left] = n;
    for (u64 p : base) {
      for (u64 m = (left + p - 1) / p * p; m <= right; m += p) {
        u64 i = m - left;
        int e = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++e;
        }
        tau[i] *= u32(e + 1);
        if (p <= Z) rough[i] = 0;
      }
    }
    for (u64 i = 0; i < len; ++i) {
      if (rem[i] > 1) {
        tau[i] *= 2;
        if (rem[i] <= Z) rough[i] = 0;  // only possible when Z > sqrt(2M)
      }
      if (rough[i]) {
        double t = double(tau[i]);
        double v = 1.0;
        for (int j = 0; j < K; ++j) v *= t;
        sum.add(v);
      }
    }
  }
  rep.sum = sum.value();
  rep.ratio = rep.sum / double(M);
  return rep;
}

UpperBoundReport upper_bound_variant(const SieveParams& params) {
  validate(params, false);
  UpperBoundReport rep;

  SieveParams bparams = params;
  bparams.gamma = 0.0;  // collapse the middle range: M2 = M21 + M23
  SparseSequence b = build_b(params.x, params.k, params.chi.modulus);
  DecompParts bp = decompose_sequence(b, bparams);
  rep.m21 = bp.s21;
  rep.m23 = bp.s23;
  rep.b_s1 = bp.s1;
  rep.b_s_direct = bp.s_direct;
  rep.identity_residual_b = std::abs(bp.s_direct - (bp.s1 - (bp.s21 + bp.s221 + bp.s222 + bp.s23)));

  SparseSequence a = build_a(params.x, params.k, params.chi.modulus);
  rep.a_s1 = s1(params, a);
  rep.a_lambda_total = a_lambda_sum(a);
  return rep;
}

}  // namespace charsieve
