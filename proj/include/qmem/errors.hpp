#pragma once

#include <stdexcept>
#include <string>

namespace qmem {

/// Bad caller input: out-of-domain parameters, wrong dimensions, malformed
/// files or arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a result that violates a numerical contract.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmem
