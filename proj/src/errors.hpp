#pragma once

#include <stdexcept>
#include <string>

namespace affina {

// A requested computation exceeds the configured enumeration/search budget.
struct ScaleError : std::runtime_error {
  explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON families, grid specs, parameter strings).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace affina
