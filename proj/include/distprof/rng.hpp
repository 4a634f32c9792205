#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace distprof {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based random stream. A stream key is mixed from the master seed
// and a coordinate tuple (purpose tag, level, q index, iteration, ...), so
// every task in a parallel grid owns an independent stream whose output
// does not depend on execution order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  static RngStream derive(std::uint64_t master_seed,
                          std::initializer_list<std::uint64_t> coords) {
    std::uint64_t h = mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t c : coords) h = mix64(h ^ c);
    return RngStream(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform in [0, n), unbiased (Lemire's multiply-reject).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace distprof
