#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpsd {

// Malformed or inconsistent input: non-square, non-finite, wrong shape.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but violates a mathematical precondition of the operation.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computed quantity left the representable range.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, std::size_t row, std::size_t col);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// The grid cannot resolve the requested feature size.
class ResolutionError : public std::runtime_error {
 public:
  ResolutionError(const std::string& what, int required_K);
  int required_K() const { return required_K_; }

 private:
  int required_K_;
};

}  // namespace mpsd
