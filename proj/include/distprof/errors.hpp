#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distprof {

// Base for all library errors. `code` is a stable machine-readable tag
// surfaced by the CLI in its error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class AsymmetricMetric : public Error {
 public:
  AsymmetricMetric(std::size_t x, std::size_t y)
      : Error("AsymmetricMetric",
              "metric matrix is not symmetric at (" + std::to_string(x) +
                  "," + std::to_string(y) + ")") {}
};

class NonzeroDiagonal : public Error {
 public:
  explicit NonzeroDiagonal(std::size_t x)
      : Error("NonzeroDiagonal",
              "d(x,x) != 0 for symbol " + std::to_string(x)) {}
};

class ZeroOffDiagonal : public Error {
 public:
  ZeroOffDiagonal(std::size_t x, std::size_t y)
      : Error("ZeroOffDiagonal",
              "d(x,y) == 0 for distinct symbols " + std::to_string(x) +
                  " and " + std::to_string(y)) {}
};

class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t x, std::size_t y, std::size_t z)
      : Error("TriangleViolation",
              "triangle inequality violated on (" + std::to_string(x) + "," +
                  std::to_string(y) + "," + std::to_string(z) +
                  "): d(x,z) > d(x,y) + d(y,z)"),
        x_(x), y_(y), z_(z) {}
  std::size_t x() const { return x_; }
  std::size_t y() const { return y_; }
  std::size_t z() const { return z_; }

 private:
  std::size_t x_, y_, z_;
};

class DegenerateAlphabet : public Error {
 public:
  DegenerateAlphabet()
      : Error("DegenerateAlphabet",
              "alphabet has fewer than two symbols; no nonzero distance "
              "exists") {}
};

class WildcardDistance : public Error {
 public:
  WildcardDistance()
      : Error("WildcardDistance", "distance requested for a wildcard symbol") {}
};

class WrongMetricKind : public Error {
 public:
  explicit WrongMetricKind(const std::string& msg)
      : Error("WrongMetricKind", msg) {}
};

class OverflowRisk : public Error {
 public:
  explicit OverflowRisk(const std::string& msg) : Error("OverflowRisk", msg) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& msg)
      : Error("BudgetExceeded", msg) {}
};

class DivisionGuard : public Error {
 public:
  DivisionGuard()
      : Error("DivisionGuard", "bucket mass requested with zero match count") {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

}  // namespace distprof
