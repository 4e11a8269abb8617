#pragma once

#include <stdexcept>
#include <string>

namespace regprod {

/// Invalid input: a precondition on the arguments does not hold.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical result could not be resolved to the requested tolerance.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Supplied invariants disagree with what was computed (e.g. class number data).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace regprod
