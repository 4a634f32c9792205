#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace distprof {

// Per-(offset, level) summary from the approximator.
struct LevelEstimate {
  double d_level = 0.0;   // threshold D of this level
  double chosen_q = 0.0;  // 0 when no q qualified
  std::uint64_t m0 = 0;   // match count at the chosen q
  std::uint64_t m1 = 0;   // in-bucket mismatch count at the chosen q
  double s_d = 0.0;       // level contribution, normalized units
  bool low_confidence = false;
};

// Distance profile over all offsets 0..n-m, in original (pre-normalization)
// units, plus diagnostics for the approximate path.
struct DistanceProfile {
  std::vector<double> values;
  std::string mode;   // "exact-naive", "exact-perletter", or "approx"
  double scale = 1.0; // metric scale the values were multiplied by

  // Approximate path only.
  std::vector<double> levels;  // D values, descending
  std::vector<std::vector<LevelEstimate>> diagnostics;  // [level][offset]
  std::vector<std::uint32_t> low_confidence_offsets;
  std::uint64_t total_samples = 0;
  double family_c = 0.0;
  std::uint64_t k_iterations = 0;
};

}  // namespace distprof
