#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace distprof {

// Dense symbol id in 0..sigma-1, or WILDCARD.
using Symbol = std::uint32_t;

// Out-of-range sentinel: a wildcard position is excluded from every
// comparison (contributes zero distance, never counts as a mismatch).
inline constexpr Symbol WILDCARD = 0xffffffffu;

using SymbolString = std::vector<Symbol>;

inline bool has_wildcard(const SymbolString& s) {
  return std::find(s.begin(), s.end(), WILDCARD) != s.end();
}

}  // namespace distprof
