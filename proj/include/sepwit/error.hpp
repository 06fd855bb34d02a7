#pragma once

#include <stdexcept>
#include <string>

namespace sepwit {

/// Invalid arguments, malformed files, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a usable result
/// (for example every solver start collapsed onto a zero projection).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sepwit
