#ifndef SOLWALK_ERRORS_HPP_
#define SOLWALK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace solwalk {

// Base for all library-domain failures, so callers can map them to exit codes
// without enumerating every subtype.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands carry incompatible primes, a non-prime p, or malformed digits.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A certified digit window is empty or too short for the requested operation.
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(what) {}
};

// b + alpha landed within the rejection band of an integer (measure-zero set).
class DegenerateBoundaryError : public Error {
 public:
  explicit DegenerateBoundaryError(const std::string& what) : Error(what) {}
};

// The step measure does not contract toward the requested boundary.
class NotContractingError : public Error {
 public:
  explicit NotContractingError(const std::string& what) : Error(what) {}
};

// The walk hit its step budget before the stop rule fired.
class MaxStepsError : public Error {
 public:
  explicit MaxStepsError(const std::string& what) : Error(what) {}
};

// Bad measure file, bad observable string, bad CLI parameter combination.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace solwalk

#endif  // SOLWALK_ERRORS_HPP_
