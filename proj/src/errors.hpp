#pragma once

#include <stdexcept>
#include <string>

namespace ssr {

// Raised when an input violates a documented invariant or precondition
// (bad density operator, mismatched dimensions, unknown catalog name, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a spec file or JSON document cannot be parsed or read.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ssr
