#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocrs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRangeProbability : public Error {
 public:
  OutOfRangeProbability(std::size_t index, double value)
      : Error("probability x[" + std::to_string(index) + "] = " + std::to_string(value) +
              " outside [0,1]"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(double sum, double limit)
      : Error("sum of probabilities " + std::to_string(sum) + " exceeds b*k = " +
              std::to_string(limit)),
        sum_(sum),
        limit_(limit) {}
  double sum() const { return sum_; }
  double limit() const { return limit_; }

 private:
  double sum_;
  double limit_;
};

class BadPartition : public Error {
 public:
  explicit BadPartition(const std::string& reason) : Error("bad partition: " + reason) {}
};

class MissingPartition : public Error {
 public:
  MissingPartition() : Error("partition greedy requires an instance with a partition") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t got)
      : Error("length mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

class SchemeMismatch : public Error {
 public:
  explicit SchemeMismatch(const std::string& what) : Error("scheme mismatch: " + what) {}
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t index, std::size_t bound)
      : Error("index " + std::to_string(index) + " out of range (bound " + std::to_string(bound) +
              ")") {}
};

class BadParameters : public Error {
 public:
  explicit BadParameters(const std::string& what) : Error("bad parameters: " + what) {}
};

class UnsupportedScheme : public Error {
 public:
  explicit UnsupportedScheme(const std::string& what) : Error("unsupported scheme: " + what) {}
};

class TooLarge : public Error {
 public:
  TooLarge(const std::string& what, long long value, long long limit)
      : Error(what + " = " + std::to_string(value) + " exceeds limit " + std::to_string(limit)) {}
};

class BadK : public Error {
 public:
  BadK(long long k, const std::string& need)
      : Error("k = " + std::to_string(k) + " invalid: " + need) {}
};

class RangeViolation : public Error {
 public:
  explicit RangeViolation(const std::string& what) : Error("range violation: " + what) {}
};

class DegenerateProphet : public Error {
 public:
  DegenerateProphet() : Error("mean prophet value is zero; ratio undefined") {}
};

}  // namespace ocrs
