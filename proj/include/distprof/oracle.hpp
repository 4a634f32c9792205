#pragma once

#include <cstdint>
#include <vector>

#include "distprof/hash_family.hpp"
#include "distprof/metric.hpp"
#include "distprof/profile.hpp"
#include "distprof/rng.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

// Ground-truth O(nm) profile. Alignment positions where either symbol is a
// wildcard contribute zero distance.
inline DistanceProfile naive_profile(const SymbolString& t,
                                     const SymbolString& p,
                                     const MetricSpace& ms) {
  const std::size_t n = t.size();
  const std::size_t m = p.size();
  if (m == 0 || m > n) throw ParseError("pattern length must be in [1, n]");
  DistanceProfile prof;
  prof.mode = "exact-naive";
  prof.scale = ms.scale();
  prof.values.assign(n - m + 1, 0.0);
  for (std::size_t i = 0; i + m <= n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j] == WILDCARD || t[i + j] == WILDCARD) continue;
      s += ms.dist(t[i + j], p[j]);
    }
    prof.values[i] = s * ms.scale();
  }
  return prof;
}

// Exact membership, cardinality, and mass of the level bucket
// B = { j | D <= d(t_{i+j}, p_j) < 2D } at a fixed offset.
struct BucketStats {
  std::vector<std::uint32_t> members;
  std::size_t card = 0;
  double mass = 0.0;  // S_D, normalized units
};

inline BucketStats bucket_stats(const SymbolString& t, const SymbolString& p,
                                const MetricSpace& ms, std::size_t offset,
                                double d_level) {
  BucketStats st;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == WILDCARD || t[offset + j] == WILDCARD) continue;
    const double d = ms.dist(t[offset + j], p[j]);
    if (d >= d_level && d < 2.0 * d_level) {
      st.members.push_back(static_cast<std::uint32_t>(j));
      st.mass += d;
    }
  }
  st.card = st.members.size();
  return st;
}

// Fraction of N independent draws separating x and y; the verification
// harness behind the Condition 1/2 checks.
inline double empirical_separation(const HashFamily& fam, Symbol x, Symbol y,
                                   std::uint64_t draws, RngStream& rng) {
  std::uint64_t separated = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const HashFunction h = fam.sample(rng);
    if (h.table[x] != h.table[y]) ++separated;
  }
  return static_cast<double>(separated) / static_cast<double>(draws);
}

}  // namespace distprof
