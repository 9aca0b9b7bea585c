#pragma once

#include <stdexcept>
#include <string>

namespace corank {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text: cycle notation, group-spec files, subgroup files.
struct ParseError : Error {
  using Error::Error;
};

// Structurally well-formed input that fails a mathematical precondition
// (not a homomorphism, not injective, not semiregular, degenerate spec, ...).
struct ValidationError : Error {
  using Error::Error;
};

// An enumeration grew past its configured cap.
struct CapError : Error {
  using Error::Error;
};

}  // namespace corank
