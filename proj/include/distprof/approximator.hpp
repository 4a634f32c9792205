#pragma once

#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "distprof/errors.hpp"
#include "distprof/hash_family.hpp"
#include "distprof/metric.hpp"
#include "distprof/profile.hpp"
#include "distprof/rng.hpp"
#include "distprof/sampler.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedf00dULL;

struct ApproxParams {
  double epsilon = 0.25;      // relative-error target, in (0,1)
  double t = 3.0;             // confidence exponent, failure prob e^{-t}
  double k_const = 4.0;       // c0 in K = ceil(c0 * C * t / eps^2)
  std::uint64_t master_seed = kDefaultSeed;
  double q_floor_factor = 1.0;  // q sweeps down while q > q_floor_factor / m
  double c_part = 8.0;          // partition-family calibration constant
  unsigned threads = 0;         // 0 = hardware concurrency
  std::uint64_t max_samples = 50'000'000;  // total Sample invocation cap
  bool keep_diagnostics = true;
};

// Among the q values whose match count reached e^{-4} K, picks the one
// maximizing q * m0 (ties toward larger q). Rows must be ordered by
// descending q. Returns nothing when no q qualifies.
inline std::optional<double> choose_q(
    const std::vector<std::pair<double, std::uint64_t>>& m0_by_q,
    std::uint64_t k_iterations) {
  const double threshold = std::exp(-4.0) * static_cast<double>(k_iterations);
  std::optional<double> best;
  double best_score = -1.0;
  for (const auto& [q, m0] : m0_by_q) {
    if (static_cast<double>(m0) < threshold) continue;
    const double score = q * static_cast<double>(m0);
    if (score > best_score) {
      best_score = score;
      best = q;
    }
  }
  return best;
}

// S_D = ((1-q) / (q * m0)) * sum of in-bucket sampled distances.
inline double estimate_bucket_mass(std::uint64_t m0, std::uint64_t m1,
                                   double q, double dist_sum) {
  if (m0 == 0) throw DivisionGuard();
  assert(m1 > 0 || dist_sum == 0.0);
  (void)m1;
  return (1.0 - q) / (q * static_cast<double>(m0)) * dist_sum;
}

namespace detail {

struct LevelQTally {
  std::vector<std::uint32_t> m0;
  std::vector<std::uint32_t> m1;
  std::vector<double> dsum;
};

// Runs `chunks` independent jobs on up to `threads` workers, storing each
// job's result by index so the caller can reduce in a fixed order. Results
// are bit-identical for any thread count.
template <typename Job>
void run_indexed_jobs(std::size_t chunks, unsigned threads, const Job& job) {
  if (threads <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) job(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        job(c);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline constexpr std::uint64_t kTagApprox = 0xa11c0de5ULL;

// The full approximation pipeline: for each level D (halving from the
// power-of-two dynamic range down to 1) and each probe probability q
// (halving from 1/2 while q > 1/m), runs K independent Sample calls, each
// against a fresh hash draw at threshold D. Per offset the best-qualified
// q's counts yield the level mass estimate S_D; the profile is the sum of
// levels, rescaled to original units.
inline DistanceProfile approximate_profile(const SymbolString& t,
                                           const SymbolString& p,
                                           const MetricSpace& ms,
                                           FamilyKind fam_kind,
                                           const ApproxParams& params) {
  const std::size_t n = t.size();
  const std::size_t m = p.size();
  if (m == 0 || m > n) throw ParseError("pattern length must be in [1, n]");
  if (!ms.is_normalized()) {
    throw ParseError("approximate_profile requires a normalized metric");
  }
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw ParseError("epsilon must be in (0,1)");
  }
  if (!(params.t >= 1.0)) throw ParseError("t must be >= 1");
  const std::size_t out = n - m + 1;

  const HashFamily probe(ms, fam_kind, 1.0, params.c_part);
  const double c_factor = probe.factor();
  std::uint64_t k_iter = static_cast<std::uint64_t>(std::ceil(
      params.k_const * c_factor * params.t /
      (params.epsilon * params.epsilon)));
  // K >= 55 keeps the acceptance threshold e^{-4} K at one or above.
  if (k_iter < 55) k_iter = 55;

  std::vector<double> levels;
  for (double d = ms.b_d_pow2(); d >= 1.0; d /= 2.0) levels.push_back(d);
  std::vector<double> qs;
  for (double q = 0.5;
       q * static_cast<double>(m) > params.q_floor_factor; q /= 2.0) {
    qs.push_back(q);
  }
  if (qs.empty()) qs.push_back(0.5);  // m == 1 corner

  const std::uint64_t total =
      static_cast<std::uint64_t>(levels.size()) * qs.size() * k_iter;
  if (total > params.max_samples) {
    throw BudgetExceeded("approximation would issue " + std::to_string(total) +
                         " Sample calls; cap is " +
                         std::to_string(params.max_samples));
  }

  unsigned threads = params.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  DistanceProfile prof;
  prof.mode = "approx";
  prof.scale = ms.scale();
  prof.levels = levels;
  prof.family_c = c_factor;
  prof.k_iterations = k_iter;
  prof.total_samples = total;
  prof.values.assign(out, 0.0);
  if (params.keep_diagnostics) prof.diagnostics.resize(levels.size());
  std::vector<bool> low_conf(out, false);

  constexpr std::size_t kChunk = 8;
  const std::size_t chunks = (k_iter + kChunk - 1) / kChunk;

  for (std::size_t li = 0; li < levels.size(); ++li) {
    const double d_level = levels[li];
    const HashFamily family(ms, fam_kind, d_level, params.c_part);

    std::vector<detail::LevelQTally> tallies(qs.size());
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const double q = qs[qi];
      std::vector<detail::LevelQTally> partial(chunks);
      detail::run_indexed_jobs(chunks, threads, [&](std::size_t c) {
        detail::LevelQTally& tal = partial[c];
        tal.m0.assign(out, 0);
        tal.m1.assign(out, 0);
        tal.dsum.assign(out, 0.0);
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, k_iter);
        for (std::uint64_t iter = lo; iter < hi; ++iter) {
          RngStream rng = RngStream::derive(
              params.master_seed, {kTagApprox, li, qi, iter});
          const HashFunction pi = family.sample(rng);
          const SymbolString ht = apply_hash(pi, t);
          const SymbolString hp = apply_hash(pi, p);
          const auto outcome = sample(q, ht, hp, rng);
          for (std::size_t i = 0; i < out; ++i) {
            if (outcome[i].kind == SampleKind::match) {
              ++tal.m0[i];
            } else if (outcome[i].kind == SampleKind::found) {
              const std::uint32_t j = outcome[i].pos;
              // Membership in M1 uses the true metric distance.
              const double d = ms.dist(t[i + j], p[j]);
              if (d >= d_level && d < 2.0 * d_level) {
                ++tal.m1[i];
                tal.dsum[i] += d;
              }
            }
          }
        }
      });
      detail::LevelQTally& tal = tallies[qi];
      tal.m0.assign(out, 0);
      tal.m1.assign(out, 0);
      tal.dsum.assign(out, 0.0);
      for (std::size_t c = 0; c < chunks; ++c) {  // fixed reduction order
        for (std::size_t i = 0; i < out; ++i) {
          tal.m0[i] += partial[c].m0[i];
          tal.m1[i] += partial[c].m1[i];
          tal.dsum[i] += partial[c].dsum[i];
        }
      }
    }

    std::vector<LevelEstimate>* diag = nullptr;
    if (params.keep_diagnostics) {
      prof.diagnostics[li].resize(out);
      diag = &prof.diagnostics[li];
    }
    std::vector<std::pair<double, std::uint64_t>> table(qs.size());
    for (std::size_t i = 0; i < out; ++i) {
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        table[qi] = {qs[qi], tallies[qi].m0[i]};
      }
      const auto chosen = choose_q(table, k_iter);
      LevelEstimate est;
      est.d_level = d_level;
      if (!chosen) {
        est.low_confidence = true;
        low_conf[i] = true;
      } else {
        std::size_t qi = 0;
        while (qs[qi] != *chosen) ++qi;
        est.chosen_q = qs[qi];
        est.m0 = tallies[qi].m0[i];
        est.m1 = tallies[qi].m1[i];
        est.s_d = estimate_bucket_mass(est.m0, est.m1, est.chosen_q,
                                       tallies[qi].dsum[i]);
        prof.values[i] += est.s_d;
      }
      if (diag) (*diag)[i] = est;
    }
  }

  for (std::size_t i = 0; i < out; ++i) prof.values[i] *= ms.scale();
  for (std::size_t i = 0; i < out; ++i) {
    if (low_conf[i]) {
      prof.low_confidence_offsets.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return prof;
}

}  // namespace distprof
