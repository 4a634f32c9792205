#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "distprof/errors.hpp"
#include "distprof/metric.hpp"
#include "distprof/rng.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

enum class FamilyKind { grid, partition };

// One sampled relabeling of the alphabet. Bucket ids are dense and start
// at 1; wildcards pass through apply_hash untouched.
struct HashFunction {
  std::vector<Symbol> table;  // symbol id -> bucket id (>= 1)
  double threshold = 1.0;     // D
  FamilyKind family = FamilyKind::partition;
  std::size_t buckets = 0;
};

inline SymbolString apply_hash(const HashFunction& h, const SymbolString& s) {
  SymbolString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = s[i] == WILDCARD ? WILDCARD : h.table[s[i]];
  }
  return out;
}

// A C-probabilistically separating family at threshold D:
//   1. d(x,y) >= D          => every draw separates x and y;
//   2. Pr(pi(x) != pi(y))   <= C * d(x,y) / D for every pair.
// Grid kind (normed metrics): randomly shifted cells of size D / dim^{1/p},
// giving C = dim. Partition kind (finite metrics): ball-growing random
// decomposition with radius in [D/4, D/2), C calibrated as c_part*ln(sigma+1).
class HashFamily {
 public:
  HashFamily(const MetricSpace& ms, FamilyKind kind, double d_threshold,
             double c_part = 8.0)
      : ms_(&ms), kind_(kind), d_(d_threshold), c_part_(c_part) {
    if (!(d_ >= 1.0)) {
      throw ParseError("separation threshold D must be >= 1");
    }
    if (kind_ == FamilyKind::grid && ms.kind() != MetricKind::normed) {
      throw WrongMetricKind("grid hashing requires a normed metric");
    }
    if (kind_ == FamilyKind::partition && ms.kind() != MetricKind::finite) {
      throw WrongMetricKind("partition hashing requires a finite metric");
    }
  }

  double threshold() const { return d_; }
  FamilyKind kind() const { return kind_; }

  // The separation factor C consumed by the approximator's K formula.
  double factor() const {
    if (kind_ == FamilyKind::grid) return static_cast<double>(ms_->dim());
    return c_part_ * std::log(static_cast<double>(ms_->sigma()) + 1.0);
  }

  HashFunction sample(RngStream& rng) const {
    return kind_ == FamilyKind::grid ? sample_grid(rng) : sample_partition(rng);
  }

 private:
  // pi_D(x) = floor(x/delta - eps) coordinate-wise with a uniform random
  // shift eps. Cell size delta = D / dim^{1/p} restores guaranteed
  // separation at ||x-y||_p >= D (some coordinate then differs by >= delta).
  HashFunction sample_grid(RngStream& rng) const {
    const std::size_t dim = ms_->dim();
    const double delta =
        std::isinf(ms_->p())
            ? d_
            : d_ / std::pow(static_cast<double>(dim), 1.0 / ms_->p());
    std::vector<double> eps(dim);
    for (auto& e : eps) e = rng.next_double();

    HashFunction h;
    h.threshold = d_;
    h.family = FamilyKind::grid;
    h.table.resize(ms_->sigma());
    std::map<std::vector<std::int64_t>, Symbol> cells;
    std::vector<std::int64_t> cell(dim);
    for (Symbol x = 0; x < ms_->sigma(); ++x) {
      for (std::size_t k = 0; k < dim; ++k) {
        cell[k] = static_cast<std::int64_t>(
            std::floor(ms_->point_coord(x, k) / delta - eps[k]));
      }
      auto [it, inserted] =
          cells.emplace(cell, static_cast<Symbol>(cells.size() + 1));
      h.table[x] = it->second;
    }
    h.buckets = cells.size();
    return h;
  }

  // Random radius r in [D/4, D/2) and a random symbol permutation as
  // cluster centers; each symbol joins the first center within r. Cluster
  // diameter <= 2r < D, so pairs at distance >= D always separate.
  HashFunction sample_partition(RngStream& rng) const {
    const std::size_t sigma = ms_->sigma();
    const double r = d_ / 4.0 + rng.next_double() * (d_ / 4.0);
    std::vector<Symbol> order(sigma);
    for (Symbol s = 0; s < sigma; ++s) order[s] = s;
    rng.shuffle(order);

    std::vector<Symbol> cluster(sigma, WILDCARD);
    for (Symbol s = 0; s < sigma; ++s) {
      for (Symbol c : order) {
        if (ms_->dist(c, s) <= r) {
          cluster[s] = c;
          break;
        }
      }
    }

    HashFunction h;
    h.threshold = d_;
    h.family = FamilyKind::partition;
    h.table.resize(sigma);
    // First-occurrence dense renumbering keeps codes small downstream.
    std::vector<Symbol> bucket_of_center(sigma, 0);
    Symbol next = 1;
    for (Symbol s = 0; s < sigma; ++s) {
      Symbol& b = bucket_of_center[cluster[s]];
      if (b == 0) b = next++;
      h.table[s] = b;
    }
    h.buckets = next - 1;
    return h;
  }

  const MetricSpace* ms_;
  FamilyKind kind_;
  double d_;
  double c_part_;
};

inline double family_factor(const HashFamily& f) { return f.factor(); }

}  // namespace distprof
