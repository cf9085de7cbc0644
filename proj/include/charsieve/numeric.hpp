#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace charsieve {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Euler-Mascheroni constant (gamma_1 throughout).
inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kZeta2 = kPi * kPi / 6.0;

// Kahan-Babuska compensated accumulator.  All large floating-point
// reductions go through this so results do not depend on how work is
// partitioned (beyond ~1e-12 relative).
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  void merge(const KahanSum& o) {
    add(o.sum);
    comp += o.comp;
  }
  double value() const { return sum + comp; }
};

// Worker-count knob (CLI --threads).  0 = hardware concurrency.
void set_worker_count(unsigned n);
unsigned worker_count();

// Runs fn(chunk_index) for chunk_index in [0, chunks) on the worker pool and
// returns per-chunk results indexed by chunk.  The caller combines them in
// index order, so the reduction is deterministic for any worker count.
template <typename T, typename Fn>
std::vector<T> run_chunks(std::size_t chunks, Fn&& fn) {
  std::vector<T> out(chunks);
  unsigned workers = worker_count();
  if (workers <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) out[c] = fn(c);
    return out;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  unsigned n = std::min<std::size_t>(workers, chunks);
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t c = next.fetch_add(1);
        if (c >= chunks) break;
        out[c] = fn(c);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

// Recursive adaptive Simpson with absolute tolerance.
template <typename Fn>
double adaptive_simpson_rec(const Fn& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename Fn>
double adaptive_simpson(const Fn& f, double a, double b, double tol, int depth = 48) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// floor(n^(1/k)) with exact integer fix-up.
u64 iroot(u64 n, int k);

}  // namespace charsieve
