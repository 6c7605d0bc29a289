#pragma once

#include <stdexcept>

namespace ume {

// Bad input: file contents, schema, or a violated operation precondition.
// The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: singular or non-absorbing system, objective out of
// range beyond tolerance. The CLI maps this to exit code 4.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ume
