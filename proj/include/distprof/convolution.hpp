#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "distprof/errors.hpp"
#include "distprof/metric.hpp"
#include "distprof/profile.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

using IntArray = std::vector<std::uint64_t>;

// Inputs small enough that the O((n-m+1)*m) double loop beats transform
// setup go through schoolbook correlation.
inline constexpr std::size_t kSchoolbookCutoff = 64;

// correlate() guarantees bit-exact results for m * max(A) * max(B) up to
// this bound; larger declared magnitudes throw OverflowRisk.
inline constexpr std::uint64_t kExactCorrelationBound = 1ULL << 62;

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e,
                             std::uint64_t mod) {
  std::uint64_t r = 1;
  b %= mod;
  while (e) {
    if (e & 1) r = (unsigned __int128)r * b % mod;
    b = (unsigned __int128)b * b % mod;
    e >>= 1;
  }
  return r;
}

// Iterative radix-2 number-theoretic transform modulo a compile-time prime
// MOD = c * 2^MAXLOG + 1 with primitive root ROOT.
template <std::uint64_t MOD, std::uint64_t ROOT, int MAXLOG>
struct Ntt {
  static void transform(std::vector<std::uint64_t>& a, bool inverse) {
    const std::size_t L = a.size();
    for (std::size_t i = 1, j = 0; i < L; ++i) {
      std::size_t bit = L >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= L; len <<= 1) {
      std::uint64_t wlen = pow_mod(ROOT, (MOD - 1) / len, MOD);
      if (inverse) wlen = pow_mod(wlen, MOD - 2, MOD);
      for (std::size_t i = 0; i < L; i += len) {
        std::uint64_t w = 1;
        for (std::size_t j = 0; j < len / 2; ++j) {
          const std::uint64_t u = a[i + j];
          const std::uint64_t v = (unsigned __int128)a[i + j + len / 2] * w % MOD;
          a[i + j] = u + v < MOD ? u + v : u + v - MOD;
          a[i + j + len / 2] = u >= v ? u - v : u + MOD - v;
          w = (unsigned __int128)w * wlen % MOD;
        }
      }
    }
    if (inverse) {
      const std::uint64_t inv_l = pow_mod(L % MOD, MOD - 2, MOD);
      for (auto& x : a) x = (unsigned __int128)x * inv_l % MOD;
    }
  }

  // Full linear convolution of a and b, reduced mod MOD.
  static std::vector<std::uint64_t> convolve(const IntArray& a,
                                             const IntArray& b) {
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t L = std::bit_ceil(out_len);
    if (L > (std::size_t{1} << MAXLOG)) {
      throw OverflowRisk("convolution length " + std::to_string(out_len) +
                         " exceeds the transform's supported size");
    }
    std::vector<std::uint64_t> fa(L, 0), fb(L, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % MOD;
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % MOD;
    transform(fa, false);
    transform(fb, false);
    for (std::size_t i = 0; i < L; ++i) {
      fa[i] = (unsigned __int128)fa[i] * fb[i] % MOD;
    }
    transform(fa, true);
    fa.resize(out_len);
    return fa;
  }
};

using Ntt0 = Ntt<998244353ULL, 3ULL, 23>;   // 119 * 2^23 + 1
using Ntt1 = Ntt<1004535809ULL, 3ULL, 21>;  // 479 * 2^21 + 1
using Ntt2 = Ntt<469762049ULL, 3ULL, 26>;   // 7 * 2^26 + 1

inline constexpr std::uint64_t kMod0 = 998244353ULL;
inline constexpr std::uint64_t kMod1 = 1004535809ULL;
inline constexpr std::uint64_t kMod2 = 469762049ULL;

// Garner recombination of residues into the unique value below the prime
// product (callers guarantee the true value fits the declared bound).
inline std::uint64_t crt2(std::uint64_t r0, std::uint64_t r1) {
  static const std::uint64_t inv01 = pow_mod(kMod0 % kMod1, kMod1 - 2, kMod1);
  const std::uint64_t d = r1 >= r0 % kMod1 ? r1 - r0 % kMod1
                                           : r1 + kMod1 - r0 % kMod1;
  const std::uint64_t k = (unsigned __int128)d * inv01 % kMod1;
  return r0 + kMod0 * k;  // < kMod0 * kMod1 ~ 1.0e18, fits uint64
}

inline std::uint64_t crt3(std::uint64_t r0, std::uint64_t r1,
                          std::uint64_t r2) {
  static const std::uint64_t m01_mod2 =
      (unsigned __int128)(kMod0 % kMod2) * (kMod1 % kMod2) % kMod2;
  static const std::uint64_t inv012 = pow_mod(m01_mod2, kMod2 - 2, kMod2);
  const std::uint64_t x01 = crt2(r0, r1);
  const std::uint64_t x01_mod2 = x01 % kMod2;
  const std::uint64_t d =
      r2 >= x01_mod2 ? r2 - x01_mod2 : r2 + kMod2 - x01_mod2;
  const std::uint64_t k = (unsigned __int128)d * inv012 % kMod2;
  return static_cast<std::uint64_t>(
      (unsigned __int128)x01 + (unsigned __int128)kMod0 * kMod1 * k);
}

// Iterative radix-2 complex FFT with a direct-evaluation twiddle table.
inline void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t L = a.size();
  for (std::size_t i = 1, j = 0; i < L; ++i) {
    std::size_t bit = L >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  static thread_local std::vector<std::complex<double>> roots;
  static thread_local std::size_t roots_for = 0;
  if (roots_for != L) {
    roots.resize(L / 2);
    const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(L);
    for (std::size_t k = 0; k < L / 2; ++k) {
      roots[k] = std::polar(1.0, step * static_cast<double>(k));
    }
    roots_for = L;
  }
  for (std::size_t len = 2; len <= L; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = L / len;
    for (std::size_t i = 0; i < L; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = roots[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + half] * w;
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv_l = 1.0 / static_cast<double>(L);
    for (auto& x : a) x *= inv_l;
  }
}

}  // namespace detail

// Exact sliding cross-correlation: V[i] = sum_j A[i+j] * B[j] for
// i = 0..n-m, computed bit-exactly over the integers. Throws OverflowRisk
// when m * max(A) * max(B) exceeds kExactCorrelationBound.
inline IntArray correlate(const IntArray& a, const IntArray& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (m == 0 || m > n) {
    throw ParseError("correlate requires 1 <= m <= n");
  }
  const std::uint64_t max_a = *std::max_element(a.begin(), a.end());
  const std::uint64_t max_b = *std::max_element(b.begin(), b.end());
  const unsigned __int128 worst = (unsigned __int128)m * max_a * max_b;
  if (worst > kExactCorrelationBound) {
    throw OverflowRisk(
        "declared magnitudes exceed the exact-correlation bound m*U_A*U_B <= "
        "2^62");
  }
  const std::size_t out = n - m + 1;
  if (m <= kSchoolbookCutoff ||
      (unsigned __int128)out * m <= (1u << 18)) {
    IntArray v(out, 0);
    for (std::size_t i = 0; i < out; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < m; ++j) s += a[i + j] * b[j];
      v[i] = s;
    }
    return v;
  }
  // Correlation as convolution with the reversed kernel.
  IntArray rb(b.rbegin(), b.rend());
  const std::uint64_t w64 = static_cast<std::uint64_t>(worst);
  IntArray v(out, 0);
  if (w64 < detail::kMod0) {
    auto c0 = detail::Ntt0::convolve(a, rb);
    for (std::size_t i = 0; i < out; ++i) v[i] = c0[m - 1 + i];
  } else if ((unsigned __int128)w64 <
             (unsigned __int128)detail::kMod0 * detail::kMod1) {
    auto c0 = detail::Ntt0::convolve(a, rb);
    auto c1 = detail::Ntt1::convolve(a, rb);
    for (std::size_t i = 0; i < out; ++i) {
      v[i] = detail::crt2(c0[m - 1 + i], c1[m - 1 + i]);
    }
  } else {
    auto c0 = detail::Ntt0::convolve(a, rb);
    auto c1 = detail::Ntt1::convolve(a, rb);
    auto c2 = detail::Ntt2::convolve(a, rb);
    for (std::size_t i = 0; i < out; ++i) {
      v[i] = detail::crt3(c0[m - 1 + i], c1[m - 1 + i], c2[m - 1 + i]);
    }
  }
  return v;
}

// Real-valued sliding cross-correlation via complex FFT. Relative error is
// a few ulps times log of the transform size; callers budget 1e-9.
inline std::vector<double> correlate_real(const std::vector<double>& a,
                                          const std::vector<double>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (m == 0 || m > n) {
    throw ParseError("correlate_real requires 1 <= m <= n");
  }
  const std::size_t out = n - m + 1;
  if (m <= kSchoolbookCutoff) {
    std::vector<double> v(out, 0.0);
    for (std::size_t i = 0; i < out; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += a[i + j] * b[j];
      v[i] = s;
    }
    return v;
  }
  const std::size_t L = std::bit_ceil(n + m - 1);
  std::vector<std::complex<double>> fa(L), fb(L);
  for (std::size_t i = 0; i < n; ++i) fa[i] = a[i];
  for (std::size_t j = 0; j < m; ++j) fb[m - 1 - j] = b[j];
  detail::fft(fa, false);
  detail::fft(fb, false);
  for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
  detail::fft(fa, true);
  std::vector<double> v(out);
  for (std::size_t i = 0; i < out; ++i) v[i] = fa[m - 1 + i].real();
  return v;
}

// Exact per-letter distance profile: S[i] = sum_j d(t_{i+j}, p_j) computed
// as sum over letters a of T_a (x) chi_a(P), with all per-letter products
// accumulated in the frequency domain so a single inverse transform serves
// the whole alphabet. No wildcards on this path.
inline DistanceProfile exact_profile_per_letter(const SymbolString& t,
                                                const SymbolString& p,
                                                const MetricSpace& ms) {
  const std::size_t n = t.size();
  const std::size_t m = p.size();
  if (m == 0 || m > n) throw ParseError("pattern length must be in [1, n]");
  if (has_wildcard(t) || has_wildcard(p)) throw WildcardDistance();
  const std::size_t out = n - m + 1;
  DistanceProfile prof;
  prof.mode = "exact-perletter";
  prof.scale = ms.scale();
  prof.values.assign(out, 0.0);

  std::vector<bool> in_pattern(ms.sigma(), false);
  for (Symbol s : p) in_pattern[s] = true;

  const std::size_t L = std::bit_ceil(n + m - 1);
  std::vector<std::complex<double>> acc(L, 0.0);
  std::vector<std::complex<double>> fa(L), fb(L);
  for (Symbol a = 0; a < ms.sigma(); ++a) {
    if (!in_pattern[a]) continue;
    std::fill(fa.begin(), fa.end(), std::complex<double>(0.0));
    std::fill(fb.begin(), fb.end(), std::complex<double>(0.0));
    for (std::size_t i = 0; i < n; ++i) fa[i] = ms.dist(a, t[i]);
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j] == a) fb[m - 1 - j] = 1.0;
    }
    detail::fft(fa, false);
    detail::fft(fb, false);
    for (std::size_t i = 0; i < L; ++i) acc[i] += fa[i] * fb[i];
  }
  detail::fft(acc, true);
  for (std::size_t i = 0; i < out; ++i) {
    prof.values[i] = std::max(0.0, acc[m - 1 + i].real()) * ms.scale();
  }
  return prof;
}

}  // namespace distprof
