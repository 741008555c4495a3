#pragma once

#include <stdexcept>
#include <string>

namespace dig {

// Problems with configuration or input files. The CLI maps these to exit code 1.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Runtime numerical failures (factorization breakdown, protocol errors, ...).
// The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

}  // namespace dig
