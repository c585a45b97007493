#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace basisforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured element cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t size, std::uint64_t cap)
      : Error(what + ": size " + std::to_string(size) + " exceeds cap " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t size_;
  std::uint64_t cap_;
};

/// The requested multiplicity cannot be reached in the given group.
class Unattainable : public Error {
 public:
  Unattainable(const std::string& what, std::uint64_t max_attainable)
      : Error(what + " (max attainable " + std::to_string(max_attainable) + ")"),
        max_attainable_(max_attainable) {}

  std::uint64_t max_attainable() const noexcept { return max_attainable_; }

 private:
  std::uint64_t max_attainable_;
};

/// A structural hypothesis (admissibility, square order, ...) does not hold.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// A black-box model turned out not to be commutative.
class NonAbelian : public Error {
 public:
  NonAbelian(std::uint64_t a, std::uint64_t b)
      : Error("model is not abelian: op(" + std::to_string(a) + "," + std::to_string(b) +
              ") != op(" + std::to_string(b) + "," + std::to_string(a) + ")"),
        a_(a),
        b_(b) {}

  std::uint64_t first() const noexcept { return a_; }
  std::uint64_t second() const noexcept { return b_; }

 private:
  std::uint64_t a_;
  std::uint64_t b_;
};

}  // namespace basisforge
