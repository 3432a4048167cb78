#pragma once

#include <stdexcept>
#include <string>

namespace dppdisc {

// Bad arguments or malformed input files. The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that started from valid inputs failed to produce a trustworthy
// result (quadrature did not converge, rejection budget exhausted, Cholesky
// breakdown past tolerance, ...). The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dppdisc
