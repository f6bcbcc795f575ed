#pragma once

#include <stdexcept>
#include <string>

namespace goim {

// Linear algebra broke down (non-PSD covariance beyond tolerance, etc.).
// The CLI maps this to exit code 2; invalid input maps to exit code 1.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact oracle was requested for a problem size it cannot enumerate.
class size_limit_error : public std::invalid_argument {
 public:
  explicit size_limit_error(const std::string& what) : std::invalid_argument(what) {}
};

// A machine was given couplings outside the set it supports.
class unsupported_coupling_error : public std::invalid_argument {
 public:
  explicit unsupported_coupling_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace goim
