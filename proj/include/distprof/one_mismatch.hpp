#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "distprof/convolution.hpp"
#include "distprof/errors.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

enum class MismatchKind : std::uint8_t { match, location, many };

struct MismatchLabel {
  MismatchKind kind = MismatchKind::match;
  std::uint32_t pos = 0;  // meaningful only for kind == location

  bool operator==(const MismatchLabel& o) const {
    return kind == o.kind && (kind != MismatchKind::location || pos == o.pos);
  }
};

struct Encoded {
  IntArray codes;  // id + 1 for symbols (>= 1), 0 for wildcards
  IntArray mask;   // 1 for symbols, 0 for wildcards
};

inline Encoded encode(const SymbolString& s) {
  Encoded e;
  e.codes.resize(s.size());
  e.mask.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == WILDCARD) {
      e.codes[i] = 0;
      e.mask[i] = 0;
    } else {
      e.codes[i] = static_cast<std::uint64_t>(s[i]) + 1;
      e.mask[i] = 1;
    }
  }
  return e;
}

namespace detail {

// One-mismatch correlation terms are bounded by m^2 * maxcode^2 (the A_1
// position weights contribute the extra factor of m); enforce headroom so
// the c1 + c3 - 2*c2 recombination below stays exact in 64 bits.
inline void check_mismatch_budget(std::size_t m, std::uint64_t max_code) {
  const unsigned __int128 worst =
      (unsigned __int128)m * m * max_code * max_code;
  if (worst > (kExactCorrelationBound >> 1)) {
    throw OverflowRisk(
        "one-mismatch arrays exceed the integer exactness budget m^2*sigma^2 "
        "<= 2^61");
  }
}

}  // namespace detail

// A_0[i] = sum_j p'_j t'_{i+j} (p_j - t_{i+j})^2 and the position-weighted
// A_1, both bit-exact. Dense encodings go through three exact integer
// correlations each; sparse subsampled patterns take a direct pass over the
// surviving positions, which is cheaper than transform setup.
inline std::pair<IntArray, IntArray> mismatch_arrays(const SymbolString& t,
                                                     const SymbolString& p) {
  const std::size_t n = t.size();
  const std::size_t m = p.size();
  if (m == 0 || m > n) throw ParseError("pattern length must be in [1, n]");
  const std::size_t out = n - m + 1;
  const Encoded te = encode(t);
  const Encoded pe = encode(p);
  std::uint64_t max_code = 1;
  for (auto c : te.codes) max_code = std::max(max_code, c);
  for (auto c : pe.codes) max_code = std::max(max_code, c);
  detail::check_mismatch_budget(m, max_code);

  std::size_t nnz = 0;
  for (auto v : pe.mask) nnz += static_cast<std::size_t>(v);

  IntArray a0(out, 0), a1(out, 0);
  if (nnz == 0) return {std::move(a0), std::move(a1)};

  const std::size_t conv_len = std::bit_ceil(n + m - 1);
  const std::size_t direct_cost = out * nnz;
  const std::size_t transform_cost =
      4 * conv_len * static_cast<std::size_t>(std::bit_width(conv_len));
  if (direct_cost <= transform_cost) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!pe.mask[j]) continue;
      const std::uint64_t pj = pe.codes[j];
      const std::uint64_t* tc = te.codes.data() + j;
      for (std::size_t i = 0; i < out; ++i) {
        const std::uint64_t tij = tc[i];
        if (tij == 0) continue;
        const std::int64_t d = static_cast<std::int64_t>(pj) -
                               static_cast<std::int64_t>(tij);
        const std::uint64_t dd = static_cast<std::uint64_t>(d * d);
        a0[i] += dd;
        a1[i] += j * dd;
      }
    }
    return {std::move(a0), std::move(a1)};
  }

  // (p - t)^2 expanded: A_0 = corr(t', p^2) - 2 corr(t, p) + corr(t^2, p'),
  // with masks already folded into the zero codes.
  IntArray tsq(n), psq(m), jpsq(m), jpc(m), jpm(m);
  for (std::size_t i = 0; i < n; ++i) tsq[i] = te.codes[i] * te.codes[i];
  for (std::size_t j = 0; j < m; ++j) {
    psq[j] = pe.codes[j] * pe.codes[j];
    jpsq[j] = j * psq[j];
    jpc[j] = j * pe.codes[j];
    jpm[j] = j * pe.mask[j];
  }
  const IntArray c1 = correlate(te.mask, psq);
  const IntArray c2 = correlate(te.codes, pe.codes);
  const IntArray c3 = correlate(tsq, pe.mask);
  const IntArray d1 = correlate(te.mask, jpsq);
  const IntArray d2 = correlate(te.codes, jpc);
  const IntArray d3 = correlate(tsq, jpm);
  for (std::size_t i = 0; i < out; ++i) {
    a0[i] = c1[i] + c3[i] - 2 * c2[i];
    a1[i] = d1[i] + d3[i] - 2 * d2[i];
  }
  return {std::move(a0), std::move(a1)};
}

// Labels every offset Match, Location(j) of the single mismatch, or Many.
// The A_1/A_0 division is an exact integer divisibility check and the
// candidate is verified against the single-term equation before a location
// is reported.
inline std::vector<MismatchLabel> one_mismatch(const SymbolString& t,
                                               const SymbolString& p) {
  const auto [a0, a1] = mismatch_arrays(t, p);
  const std::size_t m = p.size();
  std::vector<MismatchLabel> labels(a0.size());
  for (std::size_t i = 0; i < a0.size(); ++i) {
    if (a0[i] == 0) {
      labels[i] = {MismatchKind::match, 0};
      continue;
    }
    labels[i] = {MismatchKind::many, 0};
    if (a1[i] % a0[i] != 0) continue;
    const std::uint64_t r = a1[i] / a0[i];
    if (r >= m) continue;
    if (p[r] == WILDCARD || t[i + r] == WILDCARD) continue;
    const std::int64_t d = static_cast<std::int64_t>(p[r]) -
                           static_cast<std::int64_t>(t[i + r]);
    if (static_cast<std::uint64_t>(d * d) == a0[i]) {
      labels[i] = {MismatchKind::location, static_cast<std::uint32_t>(r)};
    }
  }
  return labels;
}

}  // namespace distprof
