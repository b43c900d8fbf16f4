#pragma once

#include <stdexcept>
#include <string>

namespace shifttower {

/// Invalid algebra data: the message names the identity that failed.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands with incompatible shapes or phase orders.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dense or window computation would exceed its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal inconsistency that can only come from a construction bug.
class ConstructionBug : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace shifttower
