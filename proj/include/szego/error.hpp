#pragma once

#include <stdexcept>
#include <string>

namespace szego {

// Invalid user input: bad flag values, malformed symbol specs, violated
// preconditions on sizes. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that could not be carried out faithfully: truncation too
// coarse, non-finite state, branch inconsistency, I/O failure. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace szego
