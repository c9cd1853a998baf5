#pragma once

#include <stdexcept>

namespace nsg {

// Malformed text input: grid files, rank-matrix files, CLI tokens.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nsg
