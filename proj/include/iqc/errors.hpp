#pragma once

#include <stdexcept>
#include <string>

namespace iqc {

/// Raised when an operation is called outside its domain (wrong dimension,
/// non-unitary input, maximally mixed state where a nontrivial one is needed).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised for malformed configuration or model files.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iqc
