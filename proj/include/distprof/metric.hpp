#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "distprof/errors.hpp"
#include "distprof/symbols.hpp"

namespace distprof {

enum class MetricKind { finite, normed };

// An alphabet metric: either an explicit sigma x sigma matrix or sigma
// points in R^dim under an L_p norm. Immutable after construction; share
// freely across threads.
//
// Normalization divides every distance by the minimum nonzero distance, so
// nonzero distances land in [1, b_d]. `scale` records the divisor and
// output profiles are multiplied by it so callers see original units.
class MetricSpace {
 public:
  // Validates a finite metric matrix: symmetry, identity axiom, and (by
  // default) the O(sigma^3) triangle scan. Returns an unnormalized space.
  static MetricSpace finite(const std::vector<std::vector<double>>& matrix,
                            bool check_triangle = true) {
    const std::size_t sigma = matrix.size();
    MetricSpace ms;
    ms.kind_ = MetricKind::finite;
    ms.sigma_ = sigma;
    ms.matrix_.assign(sigma * sigma, 0.0);
    for (std::size_t x = 0; x < sigma; ++x) {
      if (matrix[x].size() != sigma) {
        throw ParseError("metric matrix is not square");
      }
      for (std::size_t y = 0; y < sigma; ++y) {
        const double v = matrix[x][y];
        if (!std::isfinite(v) || v < 0.0) {
          throw ParseError("metric entries must be finite and nonnegative");
        }
        ms.matrix_[x * sigma + y] = v;
      }
    }
    for (std::size_t x = 0; x < sigma; ++x) {
      if (ms.matrix_[x * sigma + x] != 0.0) throw NonzeroDiagonal(x);
      for (std::size_t y = x + 1; y < sigma; ++y) {
        if (ms.matrix_[x * sigma + y] != ms.matrix_[y * sigma + x]) {
          throw AsymmetricMetric(x, y);
        }
        if (ms.matrix_[x * sigma + y] == 0.0) throw ZeroOffDiagonal(x, y);
      }
    }
    if (check_triangle) {
      for (std::size_t x = 0; x < sigma; ++x) {
        for (std::size_t y = 0; y < sigma; ++y) {
          for (std::size_t z = 0; z < sigma; ++z) {
            if (ms.matrix_[x * sigma + z] >
                ms.matrix_[x * sigma + y] + ms.matrix_[y * sigma + z]) {
              throw TriangleViolation(x, y, z);
            }
          }
        }
      }
    }
    return ms;
  }

  // Points in R^dim under L_p, p in [1, inf]. Triangle holds by
  // construction; only the identity axiom is checked (no duplicate points).
  static MetricSpace normed(const std::vector<std::vector<double>>& points,
                            double p) {
    if (!(p >= 1.0)) {  // also rejects NaN
      throw ParseError("norm exponent p must be in [1, inf]");
    }
    const std::size_t sigma = points.size();
    const std::size_t dim = sigma == 0 ? 0 : points[0].size();
    if (dim == 0) throw ParseError("normed metric needs nonempty points");
    MetricSpace ms;
    ms.kind_ = MetricKind::normed;
    ms.sigma_ = sigma;
    ms.dim_ = dim;
    ms.p_ = p;
    ms.points_.assign(sigma * dim, 0.0);
    for (std::size_t x = 0; x < sigma; ++x) {
      if (points[x].size() != dim) {
        throw ParseError("points must share one dimension");
      }
      for (std::size_t k = 0; k < dim; ++k) {
        if (!std::isfinite(points[x][k])) {
          throw ParseError("point coordinates must be finite");
        }
        ms.points_[x * dim + k] = points[x][k];
      }
    }
    for (std::size_t x = 0; x < sigma; ++x) {
      for (std::size_t y = x + 1; y < sigma; ++y) {
        if (ms.raw_dist(x, y) == 0.0) throw ZeroOffDiagonal(x, y);
      }
    }
    return ms;
  }

  // Divides all distances by the minimum nonzero distance. Idempotent; the
  // cumulative divisor accumulates in scale().
  MetricSpace normalized() const {
    if (sigma_ < 2) throw DegenerateAlphabet();
    double min_nz = std::numeric_limits<double>::infinity();
    double max_d = 0.0;
    for (std::size_t x = 0; x < sigma_; ++x) {
      for (std::size_t y = x + 1; y < sigma_; ++y) {
        const double d = raw_dist(x, y);
        min_nz = std::min(min_nz, d);
        max_d = std::max(max_d, d);
      }
    }
    MetricSpace out = *this;
    if (kind_ == MetricKind::finite) {
      for (double& v : out.matrix_) v /= min_nz;
    } else {
      for (double& v : out.points_) v /= min_nz;
    }
    out.scale_ = scale_ * min_nz;
    out.b_d_ = max_d / min_nz;
    out.b_d_pow2_ = 1.0;
    while (out.b_d_pow2_ < out.b_d_ * (1.0 - 1e-12)) out.b_d_pow2_ *= 2.0;
    out.normalized_ = true;
    return out;
  }

  // Distance between two symbols in the space's current units (normalized
  // units once normalized(); multiply by scale() for original units).
  double dist(Symbol x, Symbol y) const {
    if (x == WILDCARD || y == WILDCARD) throw WildcardDistance();
    return raw_dist(x, y);
  }

  MetricKind kind() const { return kind_; }
  std::size_t sigma() const { return sigma_; }
  std::size_t dim() const { return dim_; }
  double p() const { return p_; }
  bool is_normalized() const { return normalized_; }
  double scale() const { return scale_; }
  // Max distance after normalization (diagnostic truth).
  double b_d() const { return b_d_; }
  // b_d rounded up to a power of two; top of the approximator's level loop.
  double b_d_pow2() const { return b_d_pow2_; }

  double point_coord(Symbol x, std::size_t k) const {
    return points_[x * dim_ + k];
  }

 private:
  MetricSpace() = default;

  double raw_dist(std::size_t x, std::size_t y) const {
    if (kind_ == MetricKind::finite) {
      return matrix_[x * sigma_ + y];
    }
    const double* a = &points_[x * dim_];
    const double* b = &points_[y * dim_];
    if (std::isinf(p_)) {
      double m = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        m = std::max(m, std::fabs(a[k] - b[k]));
      }
      return m;
    }
    if (p_ == 2.0) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double d = a[k] - b[k];
        s += d * d;
      }
      return std::sqrt(s);
    }
    if (p_ == 1.0) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) s += std::fabs(a[k] - b[k]);
      return s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      s += std::pow(std::fabs(a[k] - b[k]), p_);
    }
    return std::pow(s, 1.0 / p_);
  }

  MetricKind kind_ = MetricKind::finite;
  std::size_t sigma_ = 0;
  std::vector<double> matrix_;  // finite kind, flattened sigma x sigma
  std::vector<double> points_;  // normed kind, flattened sigma x dim
  std::size_t dim_ = 0;
  double p_ = 2.0;
  double scale_ = 1.0;
  double b_d_ = 1.0;
  double b_d_pow2_ = 1.0;
  bool normalized_ = false;
};

}  // namespace distprof
