#ifndef UQSIM_ERRORS_HPP
#define UQSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uqsim {

// Invalid-argument conditions use std::invalid_argument directly.
// The types below cover the remaining failure classes so callers
// (and the CLI exit-code mapping) can tell them apart.

// A state whose trace is too small to normalize.
struct DegenerateStateError : std::runtime_error {
  explicit DegenerateStateError(const std::string& what) : std::runtime_error(what) {}
};

// Eigensolver or other numerical routine failed to produce a usable result.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Root bracketing failed (no sign change over the given interval).
struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// A measurement trace does not carry enough structure to analyze.
struct InsufficientDataError : std::runtime_error {
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration file or override.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read or written.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace uqsim

#endif
