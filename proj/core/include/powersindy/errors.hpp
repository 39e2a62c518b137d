#pragma once

#include <stdexcept>
#include <string>

namespace powersindy {

// Data-dependent failures: malformed input, non-finite values, empty results.
// The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration: bad library spec, bad optimizer parameters, bad axes.
// The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Rank-deficient unregularized least squares; carries the offending columns.
class SingularMatrixError : public DataError {
  public:
    explicit SingularMatrixError(const std::string& what) : DataError(what) {}
};

}  // namespace powersindy
