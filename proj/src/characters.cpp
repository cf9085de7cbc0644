#include "charsieve/characters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "charsieve/arith.hpp"

namespace charsieve {

namespace {

// psi(1+u) for u in [0, 1]: shift to w = u + 10 and use the asymptotic
// series; truncation error ~1e-13.
double psi_one_plus(double u) {
  double w = u + 10.0;
  double acc = 0.0;
  for (int j = 1; j <= 9; ++j) acc += 1.0 / (u + j);
  double w2 = w * w;
  double psi = std::log(w) - 0.5 / w -
               (1.0 / 12.0 - (1.0 / 120.0 - (1.0 / 252.0 - (1.0 / 240.0 - 1.0 / (132.0 * w2)) / w2) / w2) / w2) / w2;
  return psi - acc;
}

// Chebyshev fit of psi_one_plus on [0,1]; cheap enough for the scanner's
// ~q evaluations per character.
struct PsiCheb {
  static constexpr int kDeg = 28;
  double c[kDeg + 1];

  PsiCheb() {
    const int n = kDeg;
    double fx[kDeg + 1];
    for (int j = 0; j <= n; ++j) {
      double x = std::cos(kPi * j / n);  // [-1,1]
      fx[j] = psi_one_plus(0.5 * (x + 1.0));
    }
    for (int i = 0; i <= n; ++i) {
      double s = 0.0;
      for (int j = 0; j <= n; ++j) {
        double w = (j == 0 || j == n) ? 0.5 : 1.0;
        s += w * fx[j] * std::cos(kPi * i * j / n);
      }
      c[i] = 2.0 * s / n;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
  }

  double operator()(double u) const {  // u in [0,1]
    double x = 2.0 * u - 1.0;
    double b0 = 0.0, b1 = 0.0;
    for (int i = kDeg; i >= 1; --i) {
      double t = 2.0 * x * b0 - b1 + c[i];
      b1 = b0;
      b0 = t;
    }
    return x * b0 - b1 + c[0];
  }
};

const PsiCheb& psi_cheb() {
  static const PsiCheb fit;
  return fit;
}

bool is_squarefree(u64 n) {
  for (const auto& [p, e] : factorize(n).factors)
    if (e >= 2) return false;
  return true;
}

// L(1,chi) from chi values on one period (chi_vals[a], a in [0,q)):
//   sum_{a<q} chi(a)/a - (1/q) sum_{a<q} chi(a) psi(1+a/q).
double l_one_from_period(const std::int8_t* chi_vals, u64 q, bool cheb) {
  KahanSum head, tail;
  const PsiCheb& fit = psi_cheb();
  for (u64 a = 1; a < q; ++a) {
    int c = chi_vals[a];
    if (c == 0) continue;
    double u = double(a) / double(q);
    head.add(c / double(a));
    tail.add(c * (cheb ? fit(u) : psi_one_plus(u)));
  }
  return head.value() - tail.value() / double(q);
}

}  // namespace

int kronecker(i64 a, i64 b) {
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (b & 1) == 0) return 0;
  int v = 0;
  while ((b & 1) == 0) b >>= 1, ++v;
  int k = 1;
  if (v & 1) {
    int am8 = int(((a % 8) + 8) % 8);  // a odd here
    if (am8 == 3 || am8 == 5) k = -1;
  }
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  a %= b;
  if (a < 0) a += b;
  // b odd positive, 0 <= a < b: standard Jacobi loop with reciprocity.
  while (a != 0) {
    v = 0;
    while ((a & 1) == 0) a >>= 1, ++v;
    if (v & 1) {
      int bm8 = int(b % 8);
      if (bm8 == 3 || bm8 == 5) k = -k;
    }
    if ((a % 4) == 3 && (b % 4) == 3) k = -k;
    i64 t = b % a;
    b = a;
    a = t;
  }
  return b == 1 ? k : 0;
}

bool is_fundamental_discriminant(i64 D) {
  if (D == 0) return false;
  i64 mod4 = ((D % 4) + 4) % 4;
  if (mod4 == 1) return is_squarefree(u64(D < 0 ? -D : D));
  if (mod4 != 0) return false;
  i64 m = D / 4;
  i64 m4 = ((m % 4) + 4) % 4;
  if (m4 != 2 && m4 != 3) return false;
  return is_squarefree(u64(m < 0 ? -m : m));
}

RealCharacter RealCharacter::from_discriminant(i64 D) {
  if (!is_fundamental_discriminant(D))
    throw std::invalid_argument("RealCharacter: not a fundamental discriminant");
  RealCharacter chi;
  chi.discriminant = D;
  chi.modulus = u64(D < 0 ? -D : D);
  chi.period.resize(chi.modulus);
  for (u64 r = 0; r < chi.modulus; ++r)
    chi.period[r] = static_cast<std::int8_t>(kronecker(D, i64(r)));
  return chi;
}

LOneEstimate l_one(RealCharacter& chi, u64 cutoff) {
  const u64 q = chi.modulus;
  if (q > 1 && cutoff < q * q)
    throw std::invalid_argument("l_one: cutoff below q^2");
  KahanSum s;
  for (u64 n = 1; n <= cutoff; ++n) {
    int c = chi.chi(n);
    if (c) s.add(c / double(n));
  }
  LOneEstimate out;
  out.estimate = s.value();
  out.tail_bound = q > 1 ? double(q) * std::log(double(q)) / double(cutoff) : 0.0;
  chi.l_one_estimate = out.estimate;
  chi.has_l_one = true;
  return out;
}

double l_one_exact(const RealCharacter& chi) {
  if (chi.modulus == 1)
    throw std::domain_error("l_one_exact: trivial character diverges");
  return l_one_from_period(chi.period.data(), chi.modulus, /*cheb=*/false);
}

std::vector<CharacterScore> scan_exceptional(u64 q_max, std::size_t count) {
  if (q_max > 1'000'000) throw std::length_error("scan_exceptional: q_max > 10^6");
  if (q_max < 3 || count == 0) return {};

  // Fundamental discriminants with 1 < |D| <= q_max, both signs.
  std::vector<std::uint8_t> sqfree(q_max + 1, 1);
  for (u64 p = 2; p * p <= q_max; ++p)
    for (u64 m = p * p; m <= q_max; m += p * p) sqfree[m] = 0;
  std::vector<i64> discs;
  for (u64 a = 2; a <= q_max; ++a) {
    if (sqfree[a]) {
      if (a % 4 == 1) discs.push_back(i64(a));
      if (a % 4 == 3) discs.push_back(-i64(a));
    }
    if (a % 4 == 0) {
      u64 m = a / 4;
      if (m <= q_max && sqfree[m]) {
        if (m % 4 == 2 || m % 4 == 3) discs.push_back(i64(a));
        if (m % 4 == 1 || m % 4 == 2) discs.push_back(-i64(a));
      }
    }
  }

  // Smallest prime factor table drives the multiplicative fill of chi.
  std::vector<u32> spf(q_max + 1, 0);
  for (u64 i = 2; i <= q_max; ++i) {
    if (spf[i] == 0)
      for (u64 j = i; j <= q_max; j += i)
        if (spf[j] == 0) spf[j] = u32(i);
  }

  const std::size_t chunk = 64;
  const std::size_t chunks = (discs.size() + chunk - 1) / chunk;
  auto results = run_chunks<std::vector<CharacterScore>>(chunks, [&](std::size_t ci) {
    std::vector<CharacterScore> rows;
    std::vector<std::int8_t> vals;
    for (std::size_t i = ci * chunk; i < std::min(discs.size(), (ci + 1) * chunk); ++i) {
      const i64 D = discs[i];
      const u64 q = u64(D < 0 ? -D : D);
      vals.assign(q, 0);
      if (q > 1) vals[1] = 1;
      for (u64 a = 2; a < q; ++a) {
        u64 p = spf[a];
        vals[a] = (a == p) ? static_cast<std::int8_t>(kronecker(D, i64(p)))
                           : static_cast<std::int8_t>(vals[p] * vals[a / p]);
      }
      CharacterScore row;
      row.discriminant = D;
      row.modulus = q;
      row.l_one = l_one_from_period(vals.data(), q, /*cheb=*/true);
      row.tail_bound = 1e-12;
      row.score = row.l_one * std::log(double(q));
      rows.push_back(row);
    }
    return rows;
  });

  std::vector<CharacterScore> all;
  all.reserve(discs.size());
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  std::sort(all.begin(), all.end(), [](const CharacterScore& a, const CharacterScore& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.modulus != b.modulus) return a.modulus < b.modulus;
    return a.discriminant < b.discriminant;
  });
  if (all.size() > count) all.resize(count);
  return all;
}

}  // namespace charsieve
