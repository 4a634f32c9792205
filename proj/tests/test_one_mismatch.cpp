#include <catch2/catch_amalgamated.hpp>

#include "distprof/one_mismatch.hpp"
#include "distprof/rng.hpp"
#include "support/generators.hpp"

using namespace distprof;

namespace {

// Brute-force classification by counting non-wildcard differing positions.
MismatchLabel classify_oracle(const SymbolString& t, const SymbolString& p,
                              std::size_t offset) {
  std::size_t k = 0;
  std::uint32_t where = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == WILDCARD || t[offset + j] == WILDCARD) continue;
    if (p[j] != t[offset + j]) {
      ++k;
      where = static_cast<std::uint32_t>(j);
    }
  }
  if (k == 0) return {MismatchKind::match, 0};
  if (k == 1) return {MismatchKind::location, where};
  return {MismatchKind::many, 0};
}

}  // namespace

TEST_CASE("encode maps symbols to positive codes and wildcards to zero") {
  const auto e = encode({0, WILDCARD, 2});
  CHECK(e.codes == IntArray{1, 0, 3});
  CHECK(e.mask == IntArray{1, 0, 1});

  const auto all_wild = encode({WILDCARD, WILDCARD});
  CHECK(all_wild.mask == IntArray{0, 0});

  const auto none = encode({3, 1});
  CHECK(none.mask == IntArray{1, 1});
}

TEST_CASE("A0/A1 on the worked abcab/abd instance") {
  // a..d map to codes 1..4.
  const SymbolString t{0, 1, 2, 0, 1};
  const SymbolString p{0, 1, 3};
  const auto [a0, a1] = mismatch_arrays(t, p);
  REQUIRE(a0.size() == 3);
  CHECK(a0[0] == 1);
  CHECK(a1[0] == 2);
  CHECK(a0[1] == 11);
  CHECK(a1[1] == 19);

  const auto labels = one_mismatch(t, p);
  CHECK(labels[0] == MismatchLabel{MismatchKind::location, 2});
  CHECK(labels[1] == MismatchLabel{MismatchKind::many, 0});
}

TEST_CASE("an all-wildcard pattern matches everywhere") {
  const SymbolString t{0, 1, 2, 3};
  const SymbolString p{WILDCARD, WILDCARD};
  for (const auto& l : one_mismatch(t, p)) {
    CHECK(l.kind == MismatchKind::match);
  }
}

TEST_CASE("one_mismatch equals brute force on random and planted instances") {
  RngStream rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t sigma = 2 + rng.below(12);
    const std::size_t n = 20 + rng.below(180);
    const std::size_t m = 2 + rng.below(std::min<std::size_t>(n - 1, 40));
    auto t = testgen::random_string(n, sigma, rng);
    auto p = testgen::random_string(m, sigma, rng);
    // Sprinkle wildcards into both strings.
    for (auto& s : t) {
      if (rng.bernoulli(0.05)) s = WILDCARD;
    }
    for (auto& s : p) {
      if (rng.bernoulli(0.1)) s = WILDCARD;
    }
    // Plant 0-, 1-, and 2-mismatch windows at random offsets.
    for (std::size_t k : {0u, 1u, 2u}) {
      if (n - m < 1) break;
      testgen::plant_window(t, p, rng.below(n - m + 1), k, sigma, rng);
    }
    const auto labels = one_mismatch(t, p);
    for (std::size_t i = 0; i + m <= n; ++i) {
      INFO("trial " << trial << " offset " << i);
      CHECK(labels[i] == classify_oracle(t, p, i));
    }
  }
}

TEST_CASE("transform and direct paths agree") {
  RngStream rng(55);
  const std::size_t n = 2000, m = 300;  // large enough for the NTT path
  const auto t = testgen::random_string(n, 16, rng);
  const auto p = testgen::random_string(m, 16, rng);
  const auto labels = one_mismatch(t, p);
  for (std::size_t i = 0; i + m <= n; i += 37) {
    CHECK(labels[i] == classify_oracle(t, p, i));
  }
}

TEST_CASE("encodings beyond the exactness budget are refused") {
  const std::size_t m = 1 << 16;
  SymbolString t(2 * m, (1u << 24));
  SymbolString p(m, (1u << 24) - 1);
  CHECK_THROWS_AS(one_mismatch(t, p), OverflowRisk);
}
