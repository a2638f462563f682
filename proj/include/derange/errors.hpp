#pragma once

#include <stdexcept>
#include <string>

namespace derange {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ZeroConstantTerm : public Error {
 public:
  ZeroConstantTerm() : Error("series constant term is not invertible") {}
};

class NonzeroConstantTerm : public Error {
 public:
  NonzeroConstantTerm() : Error("series_exp requires a zero constant term") {}
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class MomentOutOfRange : public Error {
 public:
  explicit MomentOutOfRange(unsigned n)
      : Error("moment E[Y^" + std::to_string(n) + "] is not available"), order_(n) {}
  unsigned order() const noexcept { return order_; }

 private:
  unsigned order_;
};

class NoSampler : public Error {
 public:
  NoSampler() : Error("distribution has no sampler") {}
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class IndexBelowR : public Error {
 public:
  IndexBelowR(unsigned n, unsigned r)
      : Error("index n=" + std::to_string(n) + " is below r=" + std::to_string(r)) {}
};

class TailBoundUnmet : public Error {
 public:
  using Error::Error;
};

}  // namespace derange
