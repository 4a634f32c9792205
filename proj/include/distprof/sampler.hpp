#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "distprof/one_mismatch.hpp"
#include "distprof/rng.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

enum class SampleKind : std::uint8_t { match, found, nothing };

// Per-offset outcome of one Sample(q,T,P) run: the subsampled pattern
// matched, a single surviving mismatch was located, or neither (the
// paper's bottom symbol).
struct SampleOutcome {
  SampleKind kind = SampleKind::nothing;
  std::uint32_t pos = 0;  // meaningful only for kind == found
};

// Keeps each pattern position independently with probability q, erasing
// the rest to wildcards. Positions that were already wildcards stay so
// and never count as mismatches.
inline SymbolString subsample_pattern(const SymbolString& p, double q,
                                      RngStream& rng) {
  SymbolString out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const bool keep = rng.bernoulli(q);
    out[j] = (keep && p[j] != WILDCARD) ? p[j] : WILDCARD;
  }
  return out;
}

// Sample(q,T,P): one-mismatch against the randomly erased pattern. For an
// offset with m_i true mismatches, Pr(match) = (1-q)^{m_i} and a mismatch
// position is returned with probability m_i q (1-q)^{m_i - 1}, uniformly
// over the m_i mismatches.
inline std::vector<SampleOutcome> sample(double q, const SymbolString& t,
                                         const SymbolString& p,
                                         RngStream& rng) {
  const SymbolString sub = subsample_pattern(p, q, rng);
  const auto labels = one_mismatch(t, sub);
  std::vector<SampleOutcome> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    switch (labels[i].kind) {
      case MismatchKind::match:
        out[i] = {SampleKind::match, 0};
        break;
      case MismatchKind::location:
        out[i] = {SampleKind::found, labels[i].pos};
        break;
      case MismatchKind::many:
        out[i] = {SampleKind::nothing, 0};
        break;
    }
  }
  return out;
}

// Sweeps q = 1, 1/2, ... down to the last value >= 1/m and keeps, per
// offset, the first mismatch position found. Any offset with at least one
// mismatch succeeds with constant probability, and the returned position
// is uniform over that offset's mismatch set.
inline std::vector<std::optional<std::uint32_t>> sample_uniform_mismatch(
    const SymbolString& t, const SymbolString& p, RngStream& rng) {
  const std::size_t m = p.size();
  std::vector<std::optional<std::uint32_t>> out(t.size() - m + 1);
  for (double q = 1.0; q >= 1.0 / static_cast<double>(m); q /= 2.0) {
    const auto round = sample(q, t, p, rng);
    for (std::size_t i = 0; i < round.size(); ++i) {
      if (!out[i] && round[i].kind == SampleKind::found) {
        out[i] = round[i].pos;
      }
    }
  }
  return out;
}

}  // namespace distprof
