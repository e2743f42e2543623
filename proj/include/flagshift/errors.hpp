#ifndef FLAGSHIFT_ERRORS_HPP
#define FLAGSHIFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flagshift {

/// Invalid configuration: unsupported algebra, bad parameters, poles on a grid.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Misuse of an API: mismatched algebras, out-of-range indices, wrong domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generic point could not be sampled within the retry budget.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flagshift

#endif
