#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "distprof/convolution.hpp"
#include "distprof/metric.hpp"
#include "distprof/oracle.hpp"
#include "distprof/rng.hpp"
#include "support/generators.hpp"

using namespace distprof;

namespace {

// Independent O(nm) correlation oracle.
IntArray correlate_oracle(const IntArray& a, const IntArray& b) {
  IntArray v(a.size() - b.size() + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) v[i] += a[i + j] * b[j];
  }
  return v;
}

}  // namespace

TEST_CASE("correlate on hand cases") {
  CHECK(correlate({1, 2, 3, 4}, {1, 1}) == IntArray{3, 5, 7});
  CHECK(correlate({5, 0, 5}, {1}) == IntArray{5, 0, 5});
}

TEST_CASE("correlate equals the double-loop oracle on random instances") {
  RngStream rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(64);
    const std::size_t m = 1 + rng.below(n);
    IntArray a(n), b(m);
    for (auto& x : a) x = rng.below(100);
    for (auto& x : b) x = rng.below(100);
    CHECK(correlate(a, b) == correlate_oracle(a, b));
  }
}

TEST_CASE("correlate transform path is bit-exact at large sizes") {
  RngStream rng(99);
  const std::size_t n = 3000, m = 500;  // above the schoolbook cutoff
  IntArray a(n), b(m);
  for (auto& x : a) x = rng.below(1 << 16);
  for (auto& x : b) x = rng.below(1 << 16);
  CHECK(correlate(a, b) == correlate_oracle(a, b));
}

TEST_CASE("correlate is linear in its first argument") {
  RngStream rng(5);
  const std::size_t n = 300, m = 80;
  IntArray a1(n), a2(n), sum(n), b(m);
  for (std::size_t i = 0; i < n; ++i) {
    a1[i] = rng.below(1000);
    a2[i] = rng.below(1000);
    sum[i] = a1[i] + a2[i];
  }
  for (auto& x : b) x = rng.below(1000);
  const auto v1 = correlate(a1, b);
  const auto v2 = correlate(a2, b);
  const auto vs = correlate(sum, b);
  for (std::size_t i = 0; i < vs.size(); ++i) CHECK(vs[i] == v1[i] + v2[i]);
}

TEST_CASE("correlate refuses magnitudes beyond the exactness bound") {
  IntArray a(200, 1ULL << 31), b(100, 1ULL << 31);
  CHECK_THROWS_AS(correlate(a, b), OverflowRisk);
}

TEST_CASE("real correlation matches the oracle within 1e-9") {
  RngStream rng(17);
  const std::size_t n = 2000, m = 300;
  std::vector<double> a(n), b(m);
  for (auto& x : a) x = rng.next_double() * 50.0;
  for (auto& x : b) x = rng.next_double() * 50.0;
  const auto v = correlate_real(a, b);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double ref = 0.0;
    for (std::size_t j = 0; j < m; ++j) ref += a[i + j] * b[j];
    CHECK(std::fabs(v[i] - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("per-letter profile on the two-letter hand case") {
  const auto ms = MetricSpace::finite({{0, 1}, {1, 0}}).normalized();
  const SymbolString t{0, 0, 1};  // "aab"
  const SymbolString p{0, 1};    // "ab"
  const auto prof = exact_profile_per_letter(t, p, ms);
  REQUIRE(prof.values.size() == 2);
  CHECK(prof.values[0] == Catch::Approx(1.0));
  CHECK(prof.values[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("an exact occurrence scores zero") {
  RngStream rng(3);
  const auto ms =
      MetricSpace::finite(testgen::random_metric_matrix(8, rng)).normalized();
  auto t = testgen::random_string(400, 8, rng);
  const SymbolString p(t.begin() + 50, t.begin() + 90);
  const auto prof = exact_profile_per_letter(t, p, ms);
  CHECK(std::fabs(prof.values[50]) <= 1e-9 * 400);
}

TEST_CASE("per-letter profile equals the naive oracle on a random instance") {
  RngStream rng(2024);
  const std::size_t sigma = 32;
  const auto ms =
      MetricSpace::finite(testgen::random_metric_matrix(sigma, rng))
          .normalized();
  const auto t = testgen::random_string(2000, sigma, rng);
  const auto p = testgen::random_string(200, sigma, rng);
  const auto fast = exact_profile_per_letter(t, p, ms);
  const auto ref = naive_profile(t, p, ms);
  REQUIRE(fast.values.size() == ref.values.size());
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    CHECK(std::fabs(fast.values[i] - ref.values[i]) <=
          1e-9 * std::max(1.0, std::fabs(ref.values[i])));
  }
}

TEST_CASE("per-letter profile rejects wildcards") {
  const auto ms = MetricSpace::finite({{0, 1}, {1, 0}}).normalized();
  const SymbolString t{0, WILDCARD, 1};
  const SymbolString p{0, 1};
  CHECK_THROWS_AS(exact_profile_per_letter(t, p, ms), WildcardDistance);
}
