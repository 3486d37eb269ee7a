#ifndef TORICSIP_ERRORS_HPP
#define TORICSIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toricsip {

// Operand shapes disagree (vector lengths, matrix columns, ...).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A documented precondition of an operation does not hold for the input.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured node or element cap was reached. Never silently truncated.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace toricsip

#endif  // TORICSIP_ERRORS_HPP
