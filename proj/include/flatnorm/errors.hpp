#pragma once

#include <stdexcept>
#include <string>

namespace flatnorm {

// Bad user input: malformed data, domain mismatches, out-of-range parameters.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A configured size limit (LP support cap, atom cap) was exceeded.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flatnorm
